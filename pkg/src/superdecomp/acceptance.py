"""The acceptance suite: ten exact checks, each returning a CriterionResult."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from superdecomp import linalg


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.seconds:.1f}s) {self.detail}".rstrip()

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "ok": self.ok, "detail": self.detail}


class _Collector:
    def __init__(self):
        self.failures: list[str] = []

    def check(self, cond: bool, what: str):
        if not cond:
            self.failures.append(what)

    @property
    def ok(self):
        return not self.failures

    def detail(self, summary: str) -> str:
        if self.failures:
            head = "; ".join(self.failures[:4])
            more = f" (+{len(self.failures) - 4} more)" if len(self.failures) > 4 else ""
            return f"failed: {head}{more}"
        return summary


# --------------------------------------------------------------------------


def criterion_1() -> tuple[bool, str]:
    from superdecomp.algebras import by_name, verify_algebra

    names = [
        "gl(1|1)", "gl(2|1)", "sl(1|1)", "sl(1|2)", "sl(2|1)", "osp(2|2)", "pe(2)", "spe(3)",
        "vect(0|1)", "vect(0|2)", "vect(0|3)", "vect(0|4)",
        "svect(0|2)", "svect(0|3)", "svect(0|4)", "h(0|4)", "sh(0|4)",
    ]
    col = _Collector()
    sdims = {}
    for name in names:
        g = by_name(name)
        rep = verify_algebra(g)
        col.check(rep.ok, f"{name}: {rep.message}")
        sdims[name] = g.sdim
    col.check(sdims["sl(1|1)"] == (1, 2), f"sdim sl(1|1) = {sdims['sl(1|1)']}")
    for name in ("sl(1|2)", "vect(0|2)", "osp(2|2)"):
        col.check(sdims[name] == (4, 4), f"sdim {name} = {sdims[name]}")
    return col.ok, col.detail(f"{len(names)} algebras verified")


def criterion_2() -> tuple[bool, str]:
    from superdecomp.decomp import end_algebra, is_indecomposable, radical
    from superdecomp.sl11cat import XM, XP, E, build_Vhbar_n, jordan

    col = _Collector()
    for hbar, n in ((1, 1), (2, 3)):
        v = build_Vhbar_n(hbar, n)
        j = jordan(n, hbar)
        z = linalg.zeros(n)
        want_xm = np.block([[z, z], [linalg.eye(n), z]])
        want_e = np.block([[j, z], [z, j]])
        want_xp = np.block([[z, j], [z, z]])
        col.check(np.all(v.matrices[XM] == want_xm), f"rho(X-) for {(hbar, n)}")
        col.check(np.all(v.matrices[E] == want_e), f"rho(E) for {(hbar, n)}")
        col.check(np.all(v.matrices[XP] == want_xp), f"rho(X+) for {(hbar, n)}")
    for hbar in (1, 2, Fraction(1, 2), -3):
        for n in (1, 2, 3, 4):
            v = build_Vhbar_n(hbar, n)
            rel = v.matrices[XP] @ v.matrices[XM] + v.matrices[XM] @ v.matrices[XP]
            col.check(np.all(rel == v.matrices[E]), f"relation for {(hbar, n)}")
            a = end_algebra(v)
            col.check(is_indecomposable(v), f"V^{hbar}({n}) decomposable")
            col.check(len(radical(a)) == n - 1, f"radical dim for {(hbar, n)} is {len(radical(a))}")
    return col.ok, col.detail("block matrices literal; relation holds; local End, radical n-1")


def criterion_3(trials: int = 100, seed: int = 0, max_dim: int = 16) -> tuple[bool, str]:
    from superdecomp.repcore import direct_sum, random_basis_change
    from superdecomp.sl11cat import build_from_label, canonical, catalog_identify, catalog_items

    rng = random.Random(seed)
    items = catalog_items(6)
    sizes = {str(l): build_from_label(l).dim for l in items}
    col = _Collector()
    for t in range(trials):
        chosen, total = [], 0
        for _ in range(rng.randint(1, 4)):
            cand = [l for l in items if total + sizes[str(l)] <= max_dim]
            if not cand:
                break
            l = rng.choice(cand)
            chosen.append(l)
            total += sizes[str(l)]
        v = direct_sum(*[build_from_label(l) for l in chosen])
        v, _ = random_basis_change(v, rng, 2)
        try:
            got = sorted(str(l) for l in catalog_identify(v, seed=t))
        except Exception as exc:  # noqa: BLE001 - report any failure as a counterexample
            col.check(False, f"trial {t}: {exc}")
            continue
        want = sorted(str(canonical(l)) for l in chosen)
        col.check(got == want, f"trial {t}: {want} -> {got}")
    return col.ok, col.detail(f"{trials} trials, total dim <= {max_dim}")


def criterion_4() -> tuple[bool, str]:
    from superdecomp.decomp import are_isomorphic
    from superdecomp.sl11cat import (
        LambdaModule,
        build_free_lambda,
        build_typeI,
        build_typeII,
        free_reduced_split,
        lambda_module,
    )
    from superdecomp.superlinalg import Format

    col = _Collector()

    def relations_ok(v, name):
        a, b = lambda_module(v).ops
        for x, y, what in ((a, a, "a^2"), (b, b, "b^2"), (a, b, "ab"), (b, a, "ba")):
            col.check(linalg.is_zero(x @ y), f"{name}: {what} != 0")

    mods = []
    for total in range(1, 9):
        for p in range(total + 1):
            q = total - p
            if abs(p - q) > 1:
                continue
            letters = ("a", "b") if p == q else ("a",)
            # a single node has no edge, so dir does not enter
            for d in ("out", "in") if total > 1 else ("out",):
                for letter in letters:
                    v = build_typeI(p, q, d, letter)
                    mods.append((f"I({p},{q},{d},{letter})", v))
    for p in range(1, 7):
        for m in range(7):
            for n in range(7):
                if m + n == 0 or p * (m + n) > 6:
                    continue
                for mu in (5, -1, Fraction(1, 2)):
                    mods.append((f"II({p};{m},{n};{mu})", build_typeII(p, m, n, "out", mu)))
    for name, v in mods:
        relations_ok(v, name)
    pairs = 0
    for (na, va), (nb, vb) in itertools.combinations(mods, 2):
        if va.sdim != vb.sdim:
            continue
        pairs += 1
        col.check(not are_isomorphic(va, vb)[0], f"{na} = {nb}")
    # free + reduced round trips
    rng = random.Random(7)
    for n in (2, 3):
        ffmt, fops = build_free_lambda(n, (0, 1))
        red = build_typeI(3, 2, "out")
        rops = [red.matrices[0], red.matrices[1]] + [linalg.zeros(red.dim)] * (n - 2)
        fmt = Format(tuple(ffmt) + tuple(red.format))
        ops = [linalg.block_diag(x, y) for x, y in zip(fops, rops)]
        p = linalg.zeros(len(fmt))
        while True:
            for i in range(len(fmt)):
                for j in range(len(fmt)):
                    p[i, j] = Fraction(rng.randint(-2, 2)) if fmt[i] == fmt[j] else Fraction(0)
            if linalg.rank(p) == len(fmt):
                break
        inv = linalg.inverse(p)
        mod = LambdaModule(fmt, [inv @ o @ p for o in ops])
        fcols, shifts, (rcols, rfmt) = free_reduced_split(mod)
        col.check(fcols.shape[1] == 2 * 2**n and sorted(shifts) == [0, 1], f"free part for n={n}")
        col.check(rfmt.sdim == (3, 2), f"reduced part sdim for n={n}: {rfmt.sdim}")
        col.check(linalg.rank(np.concatenate([fcols, rcols], axis=1)) == len(fmt), f"split for n={n}")
        theta = linalg.eye(len(fmt))
        for o in mod.ops:
            theta = theta @ o
        col.check(linalg.is_zero(theta @ rcols), f"reduced part not reduced for n={n}")
    return col.ok, col.detail(f"{len(mods)} normal forms, {pairs} equal-sdim pairs non-isomorphic; splits round-trip")


def criterion_5() -> tuple[bool, str]:
    from superdecomp.cohom import build_window, end_cohomology, ext1
    from superdecomp.repcore import adjoint, hom, trivial
    from superdecomp.sl11cat import algebra, build_Vhbar_n, clifford_irreducible

    g = algebra()
    col = _Collector()
    w = build_window(g, trivial(g))
    col.check(w.cohomology(1)[1] == 2, f"H^1(sl(1|1))_odd = {w.cohomology(1)[1]}")
    for hbar in (1, 2, Fraction(1, 2)):
        h = end_cohomology(clifford_irreducible(hbar), 1)
        col.check(sum(h) == 1, f"H^1(End V^{hbar}) = {h}")
    for h1, h2 in ((1, 2), (2, Fraction(1, 2)), (1, -1)):
        r = ext1(clifford_irreducible(h1), clifford_irreducible(h2), with_cocycles=False)
        col.check(r.dim == 0, f"Ext^1(V^{h1}, V^{h2}) = {r.dim}")
    for hbar in (1, 2):
        for n in (1, 2, 3):
            h = end_cohomology(build_Vhbar_n(hbar, n), 1)
            col.check(h[1] == 0, f"H^1(End V^{hbar}({n}))_odd = {h[1]}")
    # d o d on a spread of pairs
    from superdecomp.formscx import build_omega, vect02

    for m in (trivial(g), adjoint(g), hom(build_Vhbar_n(2, 2), build_Vhbar_n(2, 2))):
        col.check(build_window(g, m, torus=None).check_dd(), f"d o d on sl(1|1) {m.name}")
    col.check(build_window(vect02(), build_omega(1), torus=None, max_degree=1).check_dd(), "d o d on Omega^1")
    return col.ok, col.detail("H^1 odd = 2; End V^h: 1; no gluing across hbar; odd H^1 vanishes; d o d = 0")


def criterion_6() -> tuple[bool, str]:
    from superdecomp import formscx as fx
    from superdecomp.decomp import hom_space, is_irreducible

    col = _Collector()
    for n in range(6):
        col.check(fx.build_omega(n).sdim == (2 * (n + 1), 2 * (n + 1)), f"sdim Omega^{n}")
    col.check(fx.compositions_vanish(-6, 5), "d o d")
    fx.complex_maps(-5, 5)
    for j in range(-4, 5):
        col.check(fx.exactness(j).exact, f"exactness at {j}")
    space = hom_space(fx.build_sigma(0), fx.build_omega(0))
    col.check(len(space[0]) + len(space[1]) == 1, "integral intertwiner space")
    count = 0
    for a in range(-4, 5):
        for b in range(-4, 5):
            if not 0 <= a - b <= 4:
                continue
            count += 1
            v = fx.induced_vect02(a, b)
            col.check(is_irreducible(v) == fx.is_typical((a, b)), f"typicality at {(a, b)}")
    return col.ok, col.detail(f"Omega sdims, d o d, exactness -4..4, integral unique, {count} weights")


def criterion_7() -> tuple[bool, str]:
    from superdecomp import formscx as fx
    from superdecomp.decomp import is_indecomposable

    col = _Collector()
    col.check(fx.offset() == -1, f"offset {fx.offset()}")
    for p in (1, 2, 3):
        for q in (p - 1, p, p + 1):
            for k in (1, 2, 3, 4):
                r = fx.dim_formula_check(p, q, k)
                col.check(r.match, f"(p,q,k)=({p},{q},{k}): {r.sdim} vs {r.expected}")
    for k in (1, 2, 3, 4):
        sq = fx.build_Sq(k)
        col.check(sq.sdim == fx.sq_expected_sdim(k), f"sdim Sq({k}) = {sq.sdim}")
        col.check(is_indecomposable(sq), f"Sq({k}) decomposable")
    return col.ok, col.detail("dimension formulas and Sq(k) match")


def criterion_8() -> tuple[bool, str]:
    from superdecomp import formscx as fx
    from superdecomp.cohom import ext1

    col = _Collector()
    for k in range(-3, 4):
        for l in range(-3, 4):
            r = ext1(fx.irreducible_i(k), fx.irreducible_i(l), with_cocycles=False)
            want = 1 if abs(k - l) == 1 else 0
            col.check(r.dim == want, f"Ext^1(i({k}), i({l})) = {r.dim}")
    return col.ok, col.detail("adjacent 1, otherwise 0, |k| <= 3")


def typical_test_weights():
    from superdecomp.formscx import is_typical

    return [(a, b) for a in range(-2, 4) for b in range(-2, 3) if 0 <= a - b <= 3 and is_typical((a, b))]


def criterion_9() -> tuple[bool, str]:
    from superdecomp import formscx as fx
    from superdecomp.cohom import ext1

    col = _Collector()
    weights = typical_test_weights()
    for a, b in weights:
        v = fx.induced_vect02(a, b)
        for k in range(-3, 4):
            i = fx.irreducible_i(k)
            col.check(ext1(v, i, with_cocycles=False).dim == 0, f"Ext^1(I{(a, b)}, i({k}))")
            col.check(ext1(i, v, with_cocycles=False).dim == 0, f"Ext^1(i({k}), I{(a, b)})")
    return col.ok, col.detail(f"{len(weights)} typical weights x 7 kernels, both directions")


def criterion_10() -> tuple[bool, str]:
    from superdecomp.algebras import build_vect
    from superdecomp.repcore import COINDUCE_NOTE, RepresentationError, coinduce, l0_weight_module, verify_representation

    col = _Collector()
    g = build_vect(2)
    for a, b in ((0, 0), (1, 0), (2, -1), (3, 1)):
        l0 = l0_weight_module(g, a, b)
        v = coinduce(g, l0)
        col.check(v.dim == 4 * len(l0["format"]), f"dim coinduced {(a, b)} = {v.dim}")
        col.check(verify_representation(v).ok, f"coinduced {(a, b)} not a module")
        col.check(COINDUCE_NOTE in v.notes, "note missing")
    g3 = build_vect(3)
    try:
        coinduce(g3, {"format": "0", "action": {}})
        col.check(False, "vect(0|3) accepted")
    except RepresentationError as exc:
        col.check("infinite-dimensional" in str(exc), f"unexpected error {exc}")
    return col.ok, col.detail("vect(0|2): dim 4 dim V with note; vect(0|3) rejected")


CRITERIA = [
    (1, "algebra constructions", criterion_1),
    (2, "V^hbar(n) matrices and indecomposability", criterion_2),
    (3, "sl(1|1) catalog completeness", criterion_3),
    (4, "Lambda(2) normal forms", criterion_4),
    (5, "cohomology numbers", criterion_5),
    (6, "forms complex over vect(0|2)", criterion_6),
    (7, "zigzag dimension formulas and Sq(k)", criterion_7),
    (8, "Ext lemma for kernels", criterion_8),
    (9, "typical modules split off", criterion_9),
    (10, "coinduction finiteness", criterion_10),
]


def run_one(number: int) -> CriterionResult:
    for num, title, fn in CRITERIA:
        if num == number:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # noqa: BLE001 - an exception fails the criterion
                ok, detail = False, f"error: {type(exc).__name__}: {exc}"
            return CriterionResult(num, title, ok, detail, time.perf_counter() - t0)
    raise KeyError(number)


def run_all(fail_fast: bool = False, numbers=None):
    out = []
    for num, _, _ in CRITERIA:
        if numbers and num not in numbers:
            continue
        res = run_one(num)
        out.append(res)
        if fail_fast and not res.ok:
            break
    return out
