"""Command-line interface: ``hitprob <command> ...``.

Exit codes: 0 success, 1 a check or comparison failed, 2 usage error.
"""

from __future__ import annotations

import json
import sys
from collections.abc import Sequence

import click

from . import __version__, fixtures, hitsolver, identities, invariants, phi
from .polyalg import ParseError, format_monomial, format_polynomial, parse_polynomial
from .weights import WeightVector


def _weight(_ctx, _param, value):
    if value is None:
        return None
    try:
        return WeightVector.parse(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from e


def _emit(monomials: Sequence[Sequence[int]], fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps([list(m) for m in monomials]))
    elif fmt == "tuples":
        for m in monomials:
            click.echo(" ".join(map(str, m)))
    else:
        for t, m in enumerate(monomials, 1):
            click.echo(f"{t}. {format_monomial(m)}")


def _select(basis: hitsolver.AdmissibleBasis, omega, part: str) -> hitsolver.AdmissibleBasis:
    if omega is not None:
        basis = basis.restrict(omega)
    return invariants.subbasis(basis, part)


def _basis_for(n: int, degree: int | None, omega, use_cache: bool) -> hitsolver.AdmissibleBasis:
    if degree is None and omega is None:
        raise click.UsageError("give --degree or --weight")
    if omega is not None and degree is not None and omega.degree != degree:
        raise click.UsageError(f"weight {omega} has degree {omega.degree}, not {degree}")
    d = omega.degree if degree is None else degree
    return hitsolver.admissible_basis(n, d, use_cache=use_cache)


n_opt = click.option("--n", "n", type=click.IntRange(1, 8), required=True, help="number of variables")
degree_opt = click.option("--degree", "degree", type=click.IntRange(0), default=None)
weight_opt = click.option("--weight", "omega", callback=_weight, default=None, help="weight vector, e.g. 3,3,2,1")
part_opt = click.option("--part", type=click.Choice(["all", "zero", "plus"]), default="all", show_default=True)
format_opt = click.option(
    "--format", "fmt", type=click.Choice(["text", "tuples", "json"]), default="text", show_default=True
)
cache_opt = click.option("--cache/--no-cache", "use_cache", default=False, help="read and write the basis cache")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(version=__version__, prog_name="hitprob")
def cli() -> None:
    """Minimal generators of F_2[x_1..x_n] over the Steenrod algebra."""


@cli.command()
@n_opt
@degree_opt
@weight_opt
@part_opt
@format_opt
@cache_opt
def basis(n, degree, omega, part, fmt, use_cache):
    """List the admissible monomials."""
    b = _select(_basis_for(n, degree, omega, use_cache), omega, part)
    _emit(b.monomials, fmt)


@cli.command()
@n_opt
@degree_opt
@weight_opt
@part_opt
@cache_opt
def dim(n, degree, omega, part, use_cache):
    """Print the number of minimal generators."""
    b = _select(_basis_for(n, degree, omega, use_cache), omega, part)
    click.echo(len(b))


@cli.command()
@click.argument("polynomial")
@n_opt
def hit(polynomial, n):
    """Decide whether POLYNOMIAL is hit; prints its normal form otherwise."""
    try:
        f = parse_polynomial(polynomial, n)
    except ParseError as e:
        raise click.UsageError(str(e)) from e
    if not f:
        click.echo("hit")
        return
    if not f.is_homogeneous():
        raise click.UsageError("polynomial must be homogeneous")
    rem = hitsolver.hit_space(n, f.degree).normal_form(f)
    if rem:
        click.echo(f"not hit: {format_polynomial(rem)}")
    else:
        click.echo("hit")


@cli.command()
@n_opt
@click.option("--degree", type=click.IntRange(0), required=True, help="source degree 2m + n")
@click.option("--kernel", "show_kernel", is_flag=True, help="list a basis of the kernel")
@format_opt
def kameko(n, degree, show_kernel, fmt):
    """The Kameko map (QP_n)_{2m+n} -> (QP_n)_m."""
    if degree < n or (degree - n) % 2:
        raise click.UsageError(f"degree must be 2m + {n}")
    try:
        km = hitsolver.kameko_matrix(n, (degree - n) // 2)
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    if show_kernel:
        if fmt == "json":
            click.echo(json.dumps([sorted(map(list, k)) for k in km.kernel]))
        else:
            for k in km.kernel:
                click.echo(format_polynomial(k))
        return
    click.echo(f"source {len(km.source)}")
    click.echo(f"target {len(km.target)}")
    click.echo(f"rank {km.rank}")
    click.echo(f"kernel {len(km.kernel)}")
    click.echo(f"surjective {'yes' if km.is_surjective else 'no'}")


@cli.command(name="invariants")
@n_opt
@degree_opt
@weight_opt
@part_opt
@click.option("--group", type=click.Choice(["sigma", "gl"]), default="gl", show_default=True)
@click.option("--kameko-kernel", is_flag=True, help="restrict to the kernel of the Kameko map")
@click.option("--show", is_flag=True, help="print representatives of the invariant classes")
def invariants_cmd(n, degree, omega, part, group, kameko_kernel, show):
    """Dimension of the Sigma_n or GL_n invariants."""
    if kameko_kernel:
        if degree is None or omega is not None or part != "all":
            raise click.UsageError("--kameko-kernel takes --degree only")
        try:
            fixed = invariants.kameko_kernel_fixed(n, degree, group)
        except ValueError as e:
            raise click.UsageError(str(e)) from e
    else:
        b = _select(_basis_for(n, degree, omega, False), omega, part)
        fixed = invariants.sigma_fixed(b) if group == "sigma" else invariants.gl_fixed(b)
    click.echo(len(fixed))
    if show:
        for f in fixed:
            click.echo(format_polynomial(f))


@cli.command(name="phi")
@n_opt
@weight_opt
@click.option("--check-conjecture", is_flag=True, help="test Phi(B_{n-1}(omega)) inside B_n(omega)")
@format_opt
def phi_cmd(n, omega, check_conjecture, fmt):
    """Lift B_{n-1}(omega) to P_n."""
    if omega is None:
        raise click.UsageError("--weight is required")
    if n < 2:
        raise click.UsageError("need --n >= 2")
    report = phi.check_conjecture(n, omega)
    if check_conjecture:
        click.echo(f"source {report.source}")
        click.echo(f"image {len(report.image)}")
        click.echo(f"target {len(report.target)}")
        click.echo(f"holds {'yes' if report.holds else 'no'}")
        for w in report.witnesses:
            click.echo(f"  not admissible: {format_monomial(w)}")
        if not report.holds:
            sys.exit(1)
        return
    _emit(sorted(report.image), fmt)


@cli.command()
@click.argument("name", type=click.Choice(sorted(identities.IDENTITIES)))
@click.option("--params", "params", multiple=True, help="key=value; repeat or separate with spaces")
@click.option("--grid", is_flag=True, help="check the whole parameter grid instead")
@click.option("--max-n", type=click.IntRange(1), default=identities.MAX_N, show_default=True)
@click.option("--max-degree", type=click.IntRange(1), default=identities.MAX_DEGREE, show_default=True)
def identity(name, params, grid, max_n, max_degree):
    """Check a relation between polynomials numerically."""
    if grid:
        res = identities.verify_grid(name, max_n, max_degree)
        click.echo(f"{name}: {res.checked} instances, {len(res.failures)} failures")
        for f in res.failures:
            click.echo("  " + " ".join(f"{k}={v}" for k, v in f.items()))
        if not res.ok:
            sys.exit(1)
        return
    kv = {}
    for chunk in params:
        for item in chunk.split():
            key, sep, value = item.partition("=")
            if not sep:
                raise click.UsageError(f"expected key=value, got {item!r}")
            kv[key] = value
    try:
        ok = identities.verify_identity(name, **kv)
    except (ValueError, TypeError) as e:
        raise click.UsageError(str(e)) from e
    click.echo("true" if ok else "false")
    if not ok:
        sys.exit(1)


@cli.command(name="verify-fixture")
@click.argument("fixture")
@click.option("--lenient", is_flag=True, help="report entries contradicting the header instead of failing")
def verify_fixture_cmd(fixture, lenient):
    """Compare a listing (bundled name or file) with the computed basis."""
    try:
        fx = fixtures.load_fixture(fixture, strict=not lenient)
    except KeyError as e:
        raise click.UsageError(e.args[0]) from e
    except ValueError as e:
        click.echo(str(e))
        sys.exit(1)
    computed = hitsolver.admissible_basis(fx.n, fx.d)
    diff = fixtures.verify_fixture(fx, computed.monomials)
    click.echo(diff.report())
    if not diff.equal or diff.problems:
        sys.exit(1)


@cli.command()
@click.option("--list", "do_list", is_flag=True)
@click.option("--clear", "do_clear", is_flag=True)
def cache(do_list, do_clear):
    """Inspect or clear the basis cache."""
    if not do_list and not do_clear:
        raise click.UsageError("give --list or --clear")
    if do_list:
        click.echo(f"cache directory {hitsolver.cache_dir()}")
        for p in hitsolver.list_cache():
            click.echo(p.name)
    if do_clear:
        click.echo(f"removed {hitsolver.clear_cache()} files")


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the exit code instead of raising ``SystemExit``."""
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="hitprob", standalone_mode=True)
    except SystemExit as e:
        code = e.code
        return code if isinstance(code, int) else (0 if code is None else 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
