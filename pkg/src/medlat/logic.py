"""Formula syntax, evaluation in Brouwer algebras, validity and searches.

Validity is algebraic: a formula holds in an algebra when every valuation
evaluates to the *least* element (the designated truth value).  Under this
convention And maps to the lattice join, Or to the meet, and the theory of
the 2-element algebra is exactly classical truth-table validity; the
``designate_top`` strict mode exists only to demonstrate that designating
the greatest element breaks that calibration.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import BrouwerAlgebra, all_negations_meet_irreducible, bn, from_poset
from .errors import InputError, ResourceLimitError
from .poset import Poset, enumerate_posets

DEFAULT_BUDGET = 100_000_000
MAX_FORMULA_DEPTH = 64


def evaluation_budget() -> int:
    raw = os.environ.get("MEDLAT_BUDGET", "")
    if raw:
        try:
            return int(float(raw))
        except ValueError:
            raise InputError(f"MEDLAT_BUDGET must be a number, got {raw!r}")
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# formulas
# ---------------------------------------------------------------------------

class Formula:
    __slots__ = ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


def variables(f: Formula) -> list[str]:
    seen: set[str] = set()

    def walk(g):
        if isinstance(g, Var):
            seen.add(g.name)
        elif isinstance(g, Not):
            walk(g.sub)
        elif isinstance(g, (And, Or, Imp)):
            walk(g.left)
            walk(g.right)

    walk(f)
    return sorted(seen)


def depth(f: Formula) -> int:
    if isinstance(f, (Var, Top, Bot)):
        return 0
    if isinstance(f, Not):
        return 1 + depth(f.sub)
    return 1 + max(depth(f.left), depth(f.right))


# ---------------------------------------------------------------------------
# parser (recursive descent; ~ > & > | > ->, -> right-associative)
# ---------------------------------------------------------------------------

class ParseError(InputError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...]):
        super().__init__(f"{message} at position {position} (expected {', '.join(expected)})")
        self.position = position
        self.expected = expected


_UNICODE = {"¬": "~", "∧": "&", "∨": "|", "→": "->",
            "⊤": "T", "⊥": "F"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    for k, v in _UNICODE.items():
        text = text.replace(k, v)
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            toks.append(("->", "->", i))
            i += 2
        elif c in "|&~()":
            toks.append((c, c, i))
            i += 1
        elif c in ("T", "F"):
            toks.append(("const", c, i))
            i += 1
        elif c.islower() and c.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("var", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", i,
                             ("variable", "T", "F", "(", "~"))
    toks.append(("end", "", n))
    return toks


def parse(text: str) -> Formula:
    toks = _tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]]

    def take(kind):
        tk = toks[pos[0]]
        if tk[0] != kind:
            raise ParseError(f"unexpected token {tk[1]!r}", tk[2], (kind,))
        pos[0] += 1
        return tk

    def p_imp() -> Formula:
        left = p_or()
        if peek()[0] == "->":
            take("->")
            return Imp(left, p_imp())
        return left

    def p_or() -> Formula:
        out = p_and()
        while peek()[0] == "|":
            take("|")
            out = Or(out, p_and())
        return out

    def p_and() -> Formula:
        out = p_not()
        while peek()[0] == "&":
            take("&")
            out = And(out, p_not())
        return out

    def p_not() -> Formula:
        if peek()[0] == "~":
            take("~")
            return Not(p_not())
        return p_atom()

    def p_atom() -> Formula:
        kind, val, at = peek()
        if kind == "var":
            take("var")
            return Var(val)
        if kind == "const":
            take("const")
            return Top() if val == "T" else Bot()
        if kind == "(":
            take("(")
            out = p_imp()
            take(")")
            return out
        raise ParseError(f"unexpected token {val!r}", at,
                         ("variable", "T", "F", "(", "~"))

    out = p_imp()
    take("end")
    if depth(out) > MAX_FORMULA_DEPTH:
        raise InputError(f"formula depth exceeds cap {MAX_FORMULA_DEPTH}")
    return out


def render(f: Formula) -> str:
    def go(g, level: int) -> str:
        if isinstance(g, Var):
            return g.name
        if isinstance(g, Top):
            return "T"
        if isinstance(g, Bot):
            return "F"
        if isinstance(g, Not):
            return "~" + go(g.sub, 3)
        if isinstance(g, And):
            s = f"{go(g.left, 2)} & {go(g.right, 3)}"
            lvl = 2
        elif isinstance(g, Or):
            s = f"{go(g.left, 1)} | {go(g.right, 2)}"
            lvl = 1
        else:
            s = f"{go(g.left, 1)} -> {go(g.right, 0)}"
            lvl = 0
        return f"({s})" if lvl < level else s

    return go(f, 0)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def eval_formula(f: Formula, a: BrouwerAlgebra, valuation: dict[str, int],
                 designate_top: bool = False) -> int:
    """Plain recursive evaluation (the slow path; also the independent
    re-check used on reported countermodels)."""
    truth = a.top if designate_top else a.bottom
    false = a.bottom if designate_top else a.top

    def go(g) -> int:
        if isinstance(g, Var):
            if g.name not in valuation:
                raise InputError(f"unbound variable {g.name!r}")
            return a.check_element(valuation[g.name])
        if isinstance(g, Top):
            return truth
        if isinstance(g, Bot):
            return false
        if isinstance(g, Not):
            return int(a.imp[go(g.sub), false])
        if isinstance(g, And):
            return int(a.join[go(g.left), go(g.right)])
        if isinstance(g, Or):
            return int(a.meet[go(g.left), go(g.right)])
        return int(a.imp[go(g.left), go(g.right)])

    return go(f)


def compile_formula(f: Formula, a: BrouwerAlgebra, var_order: list[str],
                    designate_top: bool = False):
    """Postfix program over the kernel opcodes."""
    truth = a.top if designate_top else a.bottom
    false = a.bottom if designate_top else a.top
    slot = {v: i for i, v in enumerate(var_order)}
    ops: list[int] = []
    args: list[int] = []

    def go(g):
        if isinstance(g, Var):
            ops.append(kernels.OP_VAR)
            args.append(slot[g.name])
        elif isinstance(g, Top):
            ops.append(kernels.OP_CONST)
            args.append(truth)
        elif isinstance(g, Bot):
            ops.append(kernels.OP_CONST)
            args.append(false)
        elif isinstance(g, Not):
            go(g.sub)
            ops.append(kernels.OP_CONST)
            args.append(false)
            ops.append(kernels.OP_IMP)
            args.append(0)
        else:
            go(g.left)
            go(g.right)
            if isinstance(g, And):
                ops.append(kernels.OP_JOIN)
            elif isinstance(g, Or):
                ops.append(kernels.OP_MEET)
            else:
                ops.append(kernels.OP_IMP)
            args.append(0)

    go(f)
    return np.array(ops, dtype=np.int64), np.array(args, dtype=np.int64)


# ---------------------------------------------------------------------------
# validity
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ValidityReport:
    formula: Formula
    algebra: BrouwerAlgebra
    valid: bool | None            # None = unknown (sampling found nothing)
    countermodel: dict[str, int] | None
    value_reached: int | None
    valuations_checked: int
    mode: str                     # "exhaustive" or "sampling"

    def to_dict(self) -> dict:
        cm = None
        if self.countermodel is not None:
            cm = {
                "assignment": {v: int(i) for v, i in self.countermodel.items()},
                "labels": {v: self.algebra.labels[i]
                           for v, i in self.countermodel.items()},
                "value": int(self.value_reached),
                "value_label": self.algebra.labels[self.value_reached],
            }
        return {
            "formula": render(self.formula),
            "algebra": self.algebra.provenance,
            "valid": self.valid,
            "countermodel": cm,
            "valuations_checked": self.valuations_checked,
            "mode": self.mode,
        }


def _decode_valuation(idx: int, m: int, var_order: list[str]) -> dict[str, int]:
    out = {}
    for v in reversed(var_order):
        out[v] = idx % m
        idx //= m
    return out


def is_valid(f: Formula, a: BrouwerAlgebra, budget: int | None = None,
             sample_seed: int | None = None, workers: int = 1,
             designate_top: bool = False) -> ValidityReport:
    """Exhaustive scan of all |carrier|^|vars| valuations, in canonical
    (mixed-radix, variables sorted by name) order; the countermodel
    returned is always the least one.  If the step count exceeds the
    budget, a seeded sampling mode must be requested explicitly and can
    only answer invalid-or-unknown.
    """
    var_order = variables(f)
    k = len(var_order)
    m = a.size
    ops, args = compile_formula(f, a, var_order, designate_top)
    designated = a.top if designate_top else a.bottom
    total = m ** k
    steps = total * len(ops)
    if budget is None:
        budget = evaluation_budget()

    if steps > budget:
        if sample_seed is None:
            raise ResourceLimitError(
                f"exhaustive check needs {total} valuations (~{steps} steps) "
                f"> budget {budget}; pass a sampling seed for sampling mode")
        count = max(1, budget // max(len(ops), 1))
        rng = np.random.default_rng(sample_seed)
        best = None
        done = 0
        while done < count:
            block = min(count - done, 1 << 15)
            idxs = rng.integers(0, total, size=block, dtype=np.int64)
            radix = m ** np.arange(k - 1, -1, -1, dtype=np.int64)
            vals = (idxs[:, None] // radix[None, :]) % m if k else np.zeros((block, 0), np.int64)
            res = kernels.eval_on_valuations(ops, args, vals, a.join, a.meet, a.imp)
            bad = np.flatnonzero(res != designated)
            if bad.size:
                cand = int(idxs[bad].min())
                best = cand if best is None else min(best, cand)
            done += block
        if best is None:
            return ValidityReport(f, a, None, None, None, count, "sampling")
        cm = _decode_valuation(best, m, var_order)
        value = eval_formula(f, a, cm, designate_top)
        return ValidityReport(f, a, False, cm, value, count, "sampling")

    workers = max(1, int(workers))
    if workers == 1 or total < workers * 4:
        first = kernels.first_fail(ops, args, k, m, a.join, a.meet, a.imp,
                                   designated, 0, total)
    else:
        bounds = [total * w // workers for w in range(workers + 1)]
        with ThreadPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(kernels.first_fail, ops, args, k, m,
                              a.join, a.meet, a.imp, designated,
                              bounds[w], bounds[w + 1])
                    for w in range(workers)]
            found = [r for r in (fu.result() for fu in futs) if r >= 0]
        first = min(found) if found else -1
    if first < 0:
        return ValidityReport(f, a, True, None, None, total, "exhaustive")
    cm = _decode_valuation(first, m, var_order)
    value = eval_formula(f, a, cm, designate_top)
    return ValidityReport(f, a, False, cm, value, first + 1, "exhaustive")


# ---------------------------------------------------------------------------
# the named axioms
# ---------------------------------------------------------------------------

AXIOM_TEXT = {
    "kp": "(~p -> q | r) -> (~p -> q) | (~p -> r)",
    "sc_paper": "((~~p -> p) -> (~p | p)) -> (~~p | p)",
    "sc_standard": "((~~p -> p) -> (p | ~p)) -> (~p | ~~p)",
    "jan": "~p | ~~p",
    "lin": "(p -> q) | (q -> p)",
    "lem": "p | ~p",
}


def axiom(name: str) -> Formula:
    if name not in AXIOM_TEXT:
        raise InputError(
            f"unknown axiom {name!r}; catalogue: {', '.join(sorted(AXIOM_TEXT))}")
    return parse(AXIOM_TEXT[name])


# ---------------------------------------------------------------------------
# membership in the finite-problems hierarchy
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LevelReport:
    levels: tuple[tuple[int, ValidityReport], ...]
    in_all_levels: bool

    def to_dict(self):
        return {
            "levels": [{"n": n, **r.to_dict()} for n, r in self.levels],
            "in_all_levels": self.in_all_levels,
        }


def lm_member(f: Formula, max_level: int, budget: int | None = None,
              workers: int = 1) -> LevelReport:
    """Validity of f in bn(1)..bn(max_level); membership up to that level."""
    if max_level < 1:
        raise InputError("level must be >= 1")
    if max_level > 5:
        raise ResourceLimitError("level cap is 5")
    if max_level == 5 and len(variables(f)) > 1:
        raise ResourceLimitError("level 5 is only allowed for 1-variable formulas")
    rows = []
    ok = True
    for n in range(1, max_level + 1):
        rep = is_valid(f, bn(n), budget=budget, workers=workers)
        rows.append((n, rep))
        ok &= bool(rep.valid)
    return LevelReport(tuple(rows), ok)


# ---------------------------------------------------------------------------
# countermodel search over all small posets
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SearchResult:
    found: bool
    poset: Poset | None
    algebra: BrouwerAlgebra | None
    report: ValidityReport | None
    max_size: int
    note: str


def countermodel_search(f: Formula, max_size: int,
                        budget: int | None = None) -> SearchResult:
    """Scan algebras of all posets with 1..max_size elements in canonical
    order; first countermodel wins.  Absence within the bound is NOT a
    validity proof."""
    if max_size > 7:
        raise ResourceLimitError("poset size cap is 7")
    for n in range(1, max_size + 1):
        for p in enumerate_posets(n):
            a = from_poset(p)
            rep = is_valid(f, a, budget=budget)
            if rep.valid is False:
                return SearchResult(True, p, a, rep, max_size, "countermodel found")
    return SearchResult(
        False, None, None, None, max_size,
        f"no countermodel within poset size {max_size}; "
        "this does not prove validity in the full logic")


# ---------------------------------------------------------------------------
# derived formula families and classical calibration
# ---------------------------------------------------------------------------

def antichain_formula(k: int) -> Formula:
    """Pairwise-comparability disjunction over x1..xk; valid exactly in
    algebras whose order has no k-antichain, provided the bottom is
    meet-irreducible.  k=2 is the linearity axiom."""
    if not 2 <= k <= 6:
        raise InputError("antichain_formula needs 2 <= k <= 6")
    names = [f"x{i}" for i in range(1, k + 1)]
    out: Formula | None = None
    for i in range(k):
        for j in range(i + 1, k):
            pair = Or(Imp(Var(names[i]), Var(names[j])),
                      Imp(Var(names[j]), Var(names[i])))
            out = pair if out is None else Or(out, pair)
    return out


def classical_tautology(f: Formula, budget: int | None = None) -> bool:
    if len(variables(f)) > 20:
        raise InputError("classical_tautology caps at 20 variables")
    if budget is None:
        budget = max(evaluation_budget(), 2 ** 22 * 64)
    return bool(is_valid(f, bn(1), budget=budget).valid)


# ---------------------------------------------------------------------------
# theory comparison and the KP class
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TheoryComparison:
    rows: tuple[dict, ...]
    left_subset_right: bool
    right_subset_left: bool
    left_witnesses: tuple[str, ...]   # valid on the left, not on the right
    right_witnesses: tuple[str, ...]
    errors: tuple[str, ...]

    def to_dict(self):
        return {
            "rows": list(self.rows),
            "left_subset_right": self.left_subset_right,
            "right_subset_left": self.right_subset_left,
            "left_witnesses": list(self.left_witnesses),
            "right_witnesses": list(self.right_witnesses),
            "errors": list(self.errors),
        }


def theory_compare(a1: BrouwerAlgebra, a2: BrouwerAlgebra, corpus,
                   budget: int | None = None) -> TheoryComparison:
    """Per-formula validity in both algebras, restricted-theory inclusion
    flags, and separating witnesses.  Budget failures are recorded and
    excluded from the inclusion claims."""
    rows, errors = [], []
    lw, rw = [], []
    l_in_r = r_in_l = True
    for f in corpus:
        text = render(f)
        try:
            r1 = is_valid(f, a1, budget=budget)
            r2 = is_valid(f, a2, budget=budget)
        except ResourceLimitError as e:
            errors.append(f"{text}: {e}")
            rows.append({"formula": text, "error": str(e)})
            continue
        rows.append({"formula": text, "valid_left": r1.valid, "valid_right": r2.valid})
        if r1.valid and not r2.valid:
            l_in_r = False
            lw.append(text)
        if r2.valid and not r1.valid:
            r_in_l = False
            rw.append(text)
    return TheoryComparison(tuple(rows), l_in_r, r_in_l,
                            tuple(lw), tuple(rw), tuple(errors))


@dataclass(frozen=True, eq=False)
class KpClassReport:
    positive: tuple[str, ...]         # algebras where every negation is meet-irreducible
    negative: tuple[str, ...]
    positive_kp_failures: tuple[str, ...]
    negative_kp_valid: tuple[str, ...]
    negative_kp_invalid: tuple[str, ...]
    ok: bool

    def to_dict(self):
        return {
            "positive": list(self.positive),
            "negative": list(self.negative),
            "positive_kp_failures": list(self.positive_kp_failures),
            "negative_kp_valid": list(self.negative_kp_valid),
            "negative_kp_invalid": list(self.negative_kp_invalid),
            "ok": self.ok,
        }


def kp_class_check(max_size: int, budget: int | None = None) -> KpClassReport:
    """Partition all algebras of posets up to max_size elements by the
    every-negation-meet-irreducible predicate; KP must hold on the whole
    positive class.  Its status on the negative class is only reported."""
    if max_size > 6:
        raise ResourceLimitError("poset size cap for the class check is 6")
    kp = axiom("kp")
    pos, negl, fails, nkv, nki = [], [], [], [], []
    for n in range(1, max_size + 1):
        for p in enumerate_posets(n):
            a = from_poset(p)
            flag, _ = all_negations_meet_irreducible(a)
            name = f"{p.name}:{a.provenance}"
            rep = is_valid(kp, a, budget=budget)
            if flag:
                pos.append(name)
                if not rep.valid:
                    fails.append(name)
            else:
                negl.append(name)
                (nkv if rep.valid else nki).append(name)
    return KpClassReport(tuple(pos), tuple(negl), tuple(fails),
                         tuple(nkv), tuple(nki), not fails)


# ---------------------------------------------------------------------------
# one-variable spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SpectrumReport:
    max_size: int
    best_element: int
    spectrum: tuple[int, ...]
    sizes: tuple[int, ...]        # per starting element


def one_variable_spectrum(a: BrouwerAlgebra, max_depth: int = 8) -> SpectrumReport:
    """For each element p, close {p} under neg/join/meet/imp for max_depth
    rounds and collapse to distinct values; report the largest spectrum."""
    if max_depth > 8:
        raise InputError("depth cap is 8")
    sizes = []
    best = (0, -1, ())
    for p in range(a.size):
        current = {p}
        for _ in range(max_depth):
            new = set(current)
            elems = sorted(current)
            for x in elems:
                new.add(int(a.imp[x, a.top]))
                for y in elems:
                    new.add(int(a.join[x, y]))
                    new.add(int(a.meet[x, y]))
                    new.add(int(a.imp[x, y]))
            if new == current:
                break
            current = new
        sizes.append(len(current))
        if len(current) > best[0]:
            best = (len(current), p, tuple(sorted(current)))
    return SpectrumReport(best[0], best[1], best[2], tuple(sizes))
