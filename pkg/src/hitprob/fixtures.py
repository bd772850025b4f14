"""Admissible-monomial listings shipped with the package, and set comparison against computed bases."""

from __future__ import annotations

import hashlib
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .polyalg import Monomial, format_monomial, parse_monomial
from .weights import WeightVector, weight_vector

PARTS = ("zero", "plus", "all")


@dataclass(frozen=True)
class Fixture:
    name: str
    n: int
    d: int
    omega: WeightVector | None
    part: str
    monomials: tuple[Monomial, ...]
    indices: tuple[int, ...] = field(repr=False)
    problems: tuple[str, ...] = ()  # entries that contradict the header (lenient parsing only)

    def __len__(self) -> int:
        return len(self.monomials)

    def as_set(self) -> set[tuple[int, ...]]:
        return {tuple(m) for m in self.monomials}


def parse_fixture(text: str, name: str = "<fixture>", strict: bool = True) -> Fixture:
    """Parse a listing.

    With ``strict`` any entry of the wrong degree, weight or part raises.
    Otherwise such entries are kept and described in ``problems``, so a
    listing with misprints can still be compared against a computed basis.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError(f"{name}: missing header")
    meta = dict(tok.split("=", 1) for tok in lines[0][1:].split())
    n, d, count = int(meta["n"]), int(meta["d"]), int(meta["count"])
    part = meta.get("part", "all")
    if part not in PARTS:
        raise ValueError(f"{name}: unknown part {part!r}")
    omega = WeightVector.parse(meta["omega"]) if "omega" in meta else None
    mons: list[Monomial] = []
    idx: list[int] = []
    problems: list[str] = []
    for ln in lines[1:]:
        label, _, body = ln.partition(".")
        m = parse_monomial(body.strip(), n)
        issue = None
        if m.degree != d:
            issue = f"entry {label} {format_monomial(m)} has degree {m.degree}, expected {d}"
        elif omega is not None and weight_vector(m) != omega:
            issue = f"entry {label} {format_monomial(m)} has weight {weight_vector(m)}, expected {omega}"
        elif part == "zero" and all(m) or part == "plus" and not all(m):
            issue = f"entry {label} {format_monomial(m)} does not belong to part {part}"
        if issue:
            if strict:
                raise ValueError(f"{name}: {issue}")
            problems.append(issue)
        idx.append(int(label))
        mons.append(m)
    if len(mons) != count:
        raise ValueError(f"{name}: header announces {count} monomials, found {len(mons)}")
    if len(set(mons)) != len(mons):
        raise ValueError(f"{name}: duplicate monomials")
    return Fixture(name, n, d, omega, part, tuple(mons), tuple(idx), tuple(problems))


def _data_dir():
    return resources.files("hitprob") / "data"


def _checksums() -> dict[str, str]:
    out = {}
    for ln in (_data_dir() / "SHA256SUMS").read_text().splitlines():
        if ln.strip():
            digest, fname = ln.split()
            out[fname] = digest
    return out


def available() -> list[str]:
    return sorted(f.removesuffix(".txt") for f in _checksums())


def load_fixture(name_or_path: str | Path, strict: bool = True) -> Fixture:
    """Load a bundled fixture by name (checksum verified) or any fixture file by path."""
    p = Path(name_or_path)
    if p.suffix == ".txt" and p.exists():
        return parse_fixture(p.read_text(), p.stem, strict)
    name = str(name_or_path).removesuffix(".txt")
    sums = _checksums()
    fname = f"{name}.txt"
    if fname not in sums:
        raise KeyError(f"no bundled fixture named {name!r}; known: {', '.join(available())}")
    raw = (_data_dir() / fname).read_bytes()
    if hashlib.sha256(raw).hexdigest() != sums[fname]:
        raise ValueError(f"checksum mismatch for bundled fixture {fname}")
    return parse_fixture(raw.decode("utf-8"), name, strict)


def select(monomials: Iterable[Sequence[int]], omega: Sequence[int] | None, part: str) -> set[tuple[int, ...]]:
    """The members of ``monomials`` that a fixture with this weight and part describes."""
    w = None if omega is None else WeightVector(omega)
    out = set()
    for m in monomials:
        if w is not None and weight_vector(m) != w:
            continue
        if part == "zero" and all(m) or part == "plus" and not all(m):
            continue
        out.add(tuple(m))
    return out


@dataclass
class FixtureDiff:
    fixture: str
    expected: int
    computed: int
    missing: list[Monomial]  # in the fixture, not computed
    extra: list[Monomial]  # computed, not in the fixture
    problems: tuple[str, ...] = ()

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra

    def report(self) -> str:
        status = "equal" if self.equal else "MISMATCH"
        lines = [f"{self.fixture}: {status}, {self.computed}/{self.expected}"]
        lines += [f"  missing {format_monomial(m)}" for m in self.missing]
        lines += [f"  extra   {format_monomial(m)}" for m in self.extra]
        lines += [f"  listing {p}" for p in self.problems]
        return "\n".join(lines)


def verify_fixture(fixture: Fixture, computed: Iterable[Sequence[int]]) -> FixtureDiff:
    """Order-insensitive comparison of a fixture with the matching slice of a computed basis."""
    got = select(computed, fixture.omega, fixture.part)
    want = fixture.as_set()
    return FixtureDiff(
        fixture.name,
        len(want),
        len(got),
        [Monomial(m) for m in sorted(want - got)],
        [Monomial(m) for m in sorted(got - want)],
        fixture.problems,
    )
