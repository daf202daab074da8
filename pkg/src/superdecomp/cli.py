"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (a check did not pass),
2 usage error (bad arguments, unreadable or malformed module file).
"""

from __future__ import annotations

import json
import os
import random
import sys
from fractions import Fraction

import click

MATH_FAIL = 1
USAGE = 2


class MathFailure(click.ClickException):
    exit_code = MATH_FAIL


class BadInput(click.ClickException):
    exit_code = USAGE


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SUPERDECOMP_THREADS", "1")))
    except ValueError:
        return 1


def _emit(ctx, payload, rows=None, header=None):
    """Write a report as canonical JSON or as TSV rows."""
    fmt = ctx.obj["out"]
    if isinstance(payload, dict):
        payload = {"seed": ctx.obj["seed"], **payload}
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True, indent=2))
    else:
        if header:
            click.echo("\t".join(header))
        for row in rows if rows is not None else _flat_rows(payload):
            click.echo("\t".join(str(x) for x in row))


def _flat_rows(payload, prefix=""):
    if isinstance(payload, dict):
        for k in sorted(payload):
            yield from _flat_rows(payload[k], f"{prefix}{k}.")
    elif isinstance(payload, list) and payload and isinstance(payload[0], (dict, list)):
        for i, x in enumerate(payload):
            yield from _flat_rows(x, f"{prefix}{i}.")
    else:
        yield (prefix.rstrip("."), json.dumps(payload))


def _algebra(name):
    from superdecomp.algebras import AlgebraError, by_name

    try:
        return by_name(name)
    except AlgebraError as exc:
        raise BadInput(str(exc)) from exc


def _load_module(path):
    from superdecomp.repcore import Representation

    try:
        with open(path) as fh:
            data = json.load(fh)
        return Representation.from_json(data)
    except FileNotFoundError as exc:
        raise BadInput(f"no such file: {path}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise BadInput(f"malformed module file {path}: {exc}") from exc
    except Exception as exc:  # noqa: BLE001 - anything else in parsing is bad input
        raise BadInput(f"malformed module file {path}: {exc}") from exc


def module_from_spec(spec: str, algebra: str | None = None):
    """Build a module from a short spec.

    ``trivial``, ``adjoint``, ``standard`` (with ``--algebra``); sl(1|1)
    catalog labels such as ``Vh(2/1,2)``; ``omega:N``, ``sigma:N``, ``i:K``,
    ``sq:K``, ``zigzag:P,Q,DIR,K``, ``induced:A,B``, ``coinduced:A,B`` for
    vect(0|2); ``end:SPEC``; ``file:PATH``.
    """
    from superdecomp import formscx as fx
    from superdecomp import repcore
    from superdecomp.sl11cat import CatalogError, build_from_label

    s = spec.strip()
    if s.startswith("file:"):
        return _load_module(s[5:])
    if s.startswith("end:"):
        v = module_from_spec(s[4:], algebra)
        return repcore.hom(v, v)
    if s in ("trivial", "adjoint", "standard"):
        g = _algebra(algebra or "sl11")
        return {"trivial": repcore.trivial, "adjoint": repcore.adjoint, "standard": repcore.standard}[s](g)
    head, _, arg = s.partition(":")
    try:
        if head == "omega":
            return fx.build_omega(int(arg))
        if head == "sigma":
            return fx.build_sigma(int(arg))
        if head == "i":
            return fx.irreducible_i(int(arg), window=max(fx.WINDOW, abs(int(arg))))
        if head == "sq":
            return fx.build_Sq(int(arg))
        if head == "zigzag":
            p, q, d, k = arg.split(",")
            return fx.build_zigzag(int(p), int(q), d, int(k))
        if head in ("induced", "coinduced"):
            a, b = arg.split(",")
            a, b = Fraction(a), Fraction(b)
            if head == "induced":
                return fx.induced_vect02(a, b)
            g = fx.vect02()
            return repcore.coinduce(g, repcore.l0_weight_module(g, a, b))
    except (ValueError, fx.FormsError) as exc:
        raise BadInput(f"bad module spec {spec!r}: {exc}") from exc
    try:
        return build_from_label(s)
    except CatalogError as exc:
        raise BadInput(f"unknown module spec {spec!r}") from exc


def _fmt_sdim(sd):
    return f"{sd[0]}|{sd[1]}"


# --------------------------------------------------------------------------


@click.group()
@click.option("--out", "out", type=click.Choice(["json", "tsv"]), default="json", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="seed for randomized steps")
@click.option("--window", type=click.IntRange(1, 12), default=None, help="forms-complex window")
@click.option("--max-dim", "max_dim", type=click.IntRange(1, 16), default=None, help="catalog size bound")
@click.pass_context
def main(ctx, out, seed, window, max_dim):
    """Exact constructions and checks for Lie superalgebra modules."""
    ctx.ensure_object(dict)
    ctx.obj["out"] = out
    ctx.obj["seed"] = seed
    ctx.obj["window"] = window
    ctx.obj["max_dim"] = max_dim


@main.group()
def algebra():
    """Build or verify a Lie superalgebra."""


@algebra.command("build")
@click.argument("name")
@click.pass_context
def algebra_build(ctx, name):
    g = _algebra(name)
    data = g.to_json()
    _emit(ctx, data, rows=[("name", g.name), ("sdim", _fmt_sdim(g.sdim))] + [
        ("basis", lab, par) for lab, par in zip(g.labels, g.parities)
    ])


@algebra.command("verify")
@click.argument("name")
@click.pass_context
def algebra_verify(ctx, name):
    from superdecomp.algebras import verify_algebra

    g = _algebra(name)
    rep = verify_algebra(g)
    payload = {"algebra": g.name, "sdim": _fmt_sdim(g.sdim), **rep.to_json()}
    _emit(ctx, payload)
    if not rep.ok:
        raise MathFailure(f"{g.name}: {rep.message}")


@main.group()
def module():
    """Build or verify a module."""


@module.command("build")
@click.argument("spec")
@click.option("--algebra", "alg", default=None, help="algebra for trivial/adjoint/standard")
@click.option("--shuffle/--no-shuffle", default=False, help="apply a seeded random basis change")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def module_build(ctx, spec, alg, shuffle, output):
    from superdecomp.repcore import random_basis_change

    v = module_from_spec(spec, alg)
    if shuffle:
        v, _ = random_basis_change(v, random.Random(ctx.obj["seed"]), 2)
    text = json.dumps(v.to_json(), sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
        click.echo(json.dumps({"written": output, "sdim": _fmt_sdim(v.sdim), "seed": ctx.obj["seed"]}, sort_keys=True))
    else:
        click.echo(text)


@main.command("sum")
@click.argument("specs", nargs=-1, required=True)
@click.option("--algebra", "alg", default=None)
@click.option("--shuffle/--no-shuffle", default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def module_sum(ctx, specs, alg, shuffle, output):
    """Write the direct sum of several module specs (shuffled by default)."""
    from superdecomp.repcore import direct_sum, random_basis_change

    v = direct_sum(*[module_from_spec(s, alg) for s in specs])
    if shuffle:
        v, _ = random_basis_change(v, random.Random(ctx.obj["seed"]), 2)
    with open(output, "w") as fh:
        fh.write(json.dumps(v.to_json(), sort_keys=True) + "\n")
    click.echo(json.dumps({"written": output, "sdim": _fmt_sdim(v.sdim), "seed": ctx.obj["seed"]}, sort_keys=True))


@module.command("verify")
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def module_verify(ctx, path):
    from superdecomp.repcore import verify_representation

    v = _load_module(path)
    rep = verify_representation(v)
    _emit(ctx, {"sdim": _fmt_sdim(v.sdim), **rep.to_json()})
    if not rep.ok:
        raise MathFailure(rep.message)


@main.command()
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def decompose(ctx, path):
    """Krull-Schmidt decomposition of a module file."""
    from superdecomp.decomp import check_witness, decompose as run

    v = _load_module(path)
    rep = run(v, ctx.obj["seed"])
    summands = [
        {"sdim": _fmt_sdim(s.module.sdim), "multiplicity": s.multiplicity} for s in rep.summands
    ]
    ok = check_witness(v, rep)
    payload = {"seed": ctx.obj["seed"], "summands": summands, "witness_ok": ok}
    _emit(ctx, payload, rows=[(s["sdim"], s["multiplicity"]) for s in summands], header=["sdim", "multiplicity"])
    if not ok:
        raise MathFailure("witness check failed")


@main.command()
@click.option("--in", "path", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def identify(ctx, path):
    """Label the indecomposable summands of an sl(1|1)-module."""
    from superdecomp.sl11cat import CatalogError, catalog_identify

    v = _load_module(path)
    if v.algebra.sdim != (1, 2):
        raise BadInput("identify expects an sl(1|1)-module")
    try:
        labels = catalog_identify(v, ctx.obj["seed"])
    except CatalogError as exc:
        raise MathFailure(str(exc)) from exc
    payload = {"seed": ctx.obj["seed"], "labels": [str(l) for l in labels]}
    _emit(ctx, payload, rows=[(str(l),) for l in labels], header=["label"])


@main.command()
@click.option("--algebra", "alg", default="sl11", show_default=True)
@click.option("--module", "spec", default="trivial", show_default=True)
@click.option("--degree", type=click.IntRange(0, 2), default=1, show_default=True)
@click.pass_context
def cohomology(ctx, alg, spec, degree):
    """dim H^k(g; M) split by parity."""
    from superdecomp.cohom import cohomology_dims

    g = _algebra(alg)
    m = module_from_spec(spec, alg)
    if m.algebra.to_json() != g.to_json():
        raise BadInput("module and algebra do not match")
    e, o = cohomology_dims(m.algebra, m, degree)
    _emit(ctx, {"even": e, "odd": o}, rows=[("even", e), ("odd", o)])


@main.command()
@click.option("--sub", "sub", required=True, help="module spec of the submodule V")
@click.option("--quot", "quot", required=True, help="module spec of the quotient W")
@click.option("--algebra", "alg", default=None)
@click.pass_context
def ext(ctx, sub, quot, alg):
    """dim Ext^1(W, V) = H^1(g; Hom(W, V)), split by parity."""
    from superdecomp.cohom import ext1

    v = module_from_spec(sub, alg)
    w = module_from_spec(quot, alg)
    r = ext1(v, w, with_cocycles=False)
    _emit(ctx, r.to_json())


@main.command()
@click.option("--window", type=click.IntRange(1, 12), default=None, help="positions -K..K (default 4)")
@click.pass_context
def forms(ctx, window):
    """Positions of the forms complex: sdim, kernel sdim, exactness."""
    from superdecomp import formscx as fx

    window = window or ctx.obj["window"] or 4

    fx.complex_maps(-window - 1, window)
    reps = [fx.exactness(j) for j in range(-window, window + 1)]
    payload = {"offset": fx.offset(), "positions": [r.to_json() for r in reps]}
    rows = [(r.position, _fmt_sdim(r.sdim), _fmt_sdim(r.kernel_sdim), r.exact) for r in reps]
    _emit(ctx, payload, rows=rows, header=["position", "sdim", "kernel_sdim", "exact"])
    if not all(r.exact for r in reps):
        raise MathFailure("complex not exact")


@main.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--dir", "dir_", type=click.Choice(["in", "out"]), default="out")
@click.option("--build/--no-build", default=False, help="also build the module by gluing")
@click.pass_context
def zigzag(ctx, p, q, k, dir_, build):
    """Dimension formula check for V(p+q e, dir; k)."""
    from superdecomp import formscx as fx
    from superdecomp.decomp import is_indecomposable

    try:
        rep = fx.dim_formula_check(p, q, k)
    except fx.FormsError as exc:
        raise BadInput(str(exc)) from exc
    payload = rep.to_json()
    if build:
        z = fx.build_zigzag(p, q, dir_, k)
        payload["built_sdim"] = list(z.sdim)
        payload["indecomposable"] = is_indecomposable(z)
    _emit(ctx, payload)
    if not rep.match:
        raise MathFailure("dimension formula mismatch")


@main.command()
@click.option("--algebra", "alg", default="sl11", show_default=True)
@click.option("--max-dim", type=click.IntRange(1, 16), default=None, help="total dimension bound (default 6)")
@click.pass_context
def catalog(ctx, alg, max_dim):
    """Indecomposable sl(1|1)-modules up to a total dimension."""
    from superdecomp.sl11cat import catalog_items, label_sdim

    max_dim = max_dim or ctx.obj["max_dim"] or 6

    g = _algebra(alg)
    if g.sdim != (1, 2):
        raise BadInput("the catalog is available for sl(1|1) only")
    items = [(str(l), label_sdim(l)) for l in catalog_items(max_dim)]
    items = [(l, s) for l, s in items if sum(s) <= max_dim]
    payload = {"algebra": g.name, "items": [{"label": l, "sdim": _fmt_sdim(s)} for l, s in items]}
    _emit(ctx, payload, rows=[(l, _fmt_sdim(s)) for l, s in items], header=["label", "sdim"])


@main.command()
@click.option("--only", type=int, multiple=True, help="run only these criteria")
@click.option("--keep-going/--fail-fast", default=False)
@click.pass_context
def accept(ctx, only, keep_going):
    """Run the acceptance suite (fails fast by default)."""
    from superdecomp.acceptance import CRITERIA, run_all, run_one

    numbers = [n for n, _, _ in CRITERIA if not only or n in only]
    threads = _threads()
    results = []
    if threads > 1 and keep_going:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, numbers))
    else:
        results = run_all(fail_fast=not keep_going, numbers=numbers)
    if ctx.obj["out"] == "json":
        click.echo(json.dumps([r.to_json() for r in results], sort_keys=True, indent=2))
    else:
        for r in results:
            click.echo(r.line())
    if not all(r.ok for r in results):
        raise MathFailure("acceptance suite failed")


def run(argv=None) -> int:
    """Entry point returning the exit code instead of exiting."""
    try:
        main.main(args=argv, standalone_mode=False)
    except click.exceptions.UsageError as exc:
        exc.show()
        return USAGE
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
