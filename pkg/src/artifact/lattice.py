"""Integral lattices whose shells carry corner-vector designs: the D4 family,
the extended Golay code and Leech lattice, the shorter Leech lattice seen
through an orthogonal embedding, and the Barnes-Wall lattice in dimension 16.

Coordinates are always integer-scaled so membership tests are exact:
Leech vectors are multiplied by ``sqrt 8``; D4* and D4' vectors are stored
as ``w = 2y`` where ``y`` is the D4* vector.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np

from .design import FULL, WeightedDesign
from .moments import sphere_moment
from .orbits import GCVOrbit
from .scalars import Surd

GOLAY_LENGTH = 24
QR_PRIME = 23
INFINITY = 23  # index of the point at infinity; index i < 23 is the residue i


class NonIntegralImageError(ValueError):
    pass


# ---------------------------------------------------------------- Golay code


def _word(bits) -> int:
    return sum(1 << i for i in bits)


def _support(word: int) -> list[int]:
    return [i for i in range(GOLAY_LENGTH) if word >> i & 1]


@lru_cache(maxsize=1)
def golay_generators() -> tuple[int, ...]:
    """Twelve independent words spanning the extended quadratic-residue code of length 24.

    They are the first independent cyclic shifts of the word supported on the
    nonzero quadratic residues mod 23, each extended by a parity bit at
    infinity.
    """
    residues = sorted({(x * x) % QR_PRIME for x in range(1, QR_PRIME)})
    rows: list[int] = []
    reduced: list[int] = []
    for k in range(QR_PRIME):
        bits = [(b + k) % QR_PRIME for b in residues]
        if len(bits) % 2:
            bits.append(INFINITY)
        w = _word(bits)
        r = w
        for b in reduced:
            r = min(r, r ^ b)
        if r:
            rows.append(w)
            reduced.append(r)
        if len(rows) == 12:
            break
    return tuple(rows)


@lru_cache(maxsize=1)
def golay_code() -> frozenset[int]:
    """All 4096 codewords as 24-bit integers; bit ``i`` is coordinate ``i``."""
    words = {0}
    for g in golay_generators():
        words |= {w ^ g for w in words}
    if len(words) != 4096:
        raise RuntimeError("generators are dependent")
    return frozenset(words)


def weight_distribution(code=None) -> dict[int, int]:
    code = golay_code() if code is None else code
    out: dict[int, int] = {}
    for w in code:
        k = bin(w).count("1")
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


def minimum_distance(code=None) -> int:
    code = golay_code() if code is None else code
    return min(bin(w).count("1") for w in code if w)


def is_self_dual(code=None) -> bool:
    code = golay_code() if code is None else code
    gens = golay_generators()
    return len(code) == 2**12 and all(bin(a & b).count("1") % 2 == 0 for a in gens for b in gens)


def octads() -> list[int]:
    return sorted(w for w in golay_code() if bin(w).count("1") == 8)


# ---------------------------------------------------------------- PSL(2,23) on the projective line


def _mobius(i: int, a: int, b: int, c: int, d: int) -> int:
    # x -> (a x + b)/(c x + d) on {0..22, infinity}
    p = QR_PRIME
    if i == INFINITY:
        return INFINITY if c == 0 else (a * pow(c, -1, p)) % p
    den = (c * i + d) % p
    if den == 0:
        return INFINITY
    return ((a * i + b) * pow(den, -1, p)) % p


def psl_generators() -> list[tuple[int, ...]]:
    """Coordinate permutations ``x -> x+1``, ``x -> 2x`` and ``x -> -1/x``."""
    maps = [(1, 1, 0, 1), (2, 0, 0, 1), (0, -1, 1, 0)]
    return [tuple(_mobius(i, *m) for i in range(GOLAY_LENGTH)) for m in maps]


def permute_word(word: int, perm) -> int:
    return _word(perm[i] for i in _support(word))


def code_preserved_by(perm) -> bool:
    code = golay_code()
    return all(permute_word(g, perm) in code for g in golay_generators())


# ---------------------------------------------------------------- Leech lattice


def leech_contains(u) -> bool:
    """Membership of ``u / sqrt 8`` in the Leech lattice, for an integer vector ``u``.

    Even vectors must be ``2c + 4x`` with ``c`` a codeword and ``sum x`` even;
    odd vectors must be ``1 + 2c + 4x`` with ``sum x`` odd.
    """
    u = [int(v) for v in u]
    if len(u) != GOLAY_LENGTH:
        raise ValueError("Leech vectors have 24 coordinates")
    parities = {v % 2 for v in u}
    if len(parities) != 1:
        return False
    offset = parities.pop()
    shifted = [v - offset for v in u]
    c = _word(i for i, v in enumerate(shifted) if (v // 2) % 2)
    if c not in golay_code():
        return False
    xsum = sum((v - 2 * ((c >> i) & 1)) // 4 for i, v in enumerate(shifted))
    return xsum % 2 == offset


def leech_norm(u) -> Fraction:
    """Squared length of ``u / sqrt 8``."""
    return Fraction(sum(int(v) * int(v) for v in u), 8)


def leech_minimal_shell() -> np.ndarray:
    """The 196560 vectors of norm 4, as ``sqrt 8``-scaled integer rows.

    Built from the three coordinate shapes: ``(+-4)^2 0^22``, ``(+-2)^8 0^16``
    on an octad with an even number of minus signs, and ``(-+3) (+-1)^23``
    with signs read off a codeword.
    """
    rows = []
    for i, j in itertools.combinations(range(GOLAY_LENGTH), 2):
        for si, sj in itertools.product((4, -4), repeat=2):
            v = [0] * GOLAY_LENGTH
            v[i], v[j] = si, sj
            rows.append(v)
    for octad in octads():
        supp = _support(octad)
        for signs in itertools.product((1, -1), repeat=7):
            last = 1 if signs.count(-1) % 2 == 0 else -1
            v = [0] * GOLAY_LENGTH
            for k, s in zip(supp, signs + (last,)):
                v[k] = 2 * s
            rows.append(v)
    for c in sorted(golay_code()):
        base = [-1 if (c >> k) & 1 else 1 for k in range(GOLAY_LENGTH)]
        for i in range(GOLAY_LENGTH):
            v = list(base)
            v[i] = -3 * base[i]
            rows.append(v)
    return np.array(rows, dtype=np.int64)


def _shell_generators():
    """Sign changes on the 12 generating codewords, then the three coordinate maps."""
    gens = []
    for g in golay_generators():
        gens.append(("sign", np.array([-1 if (g >> k) & 1 else 1 for k in range(GOLAY_LENGTH)], dtype=np.int64)))
    for perm in psl_generators():
        gens.append(("perm", np.array(perm, dtype=np.int64)))
    return gens


def _apply(gen, X: np.ndarray) -> np.ndarray:
    kind, data = gen
    if kind == "sign":
        return X * data
    out = np.empty_like(X)
    out[:, data] = X  # coordinate k moves to position perm[k]
    return out


def _row_keys(X: np.ndarray) -> list[bytes]:
    packed = np.ascontiguousarray(X.astype(np.int8))
    return [row.tobytes() for row in packed]


@dataclass
class ShellDesignReport:
    size: int
    norm: Fraction
    orbit_sizes: list
    generators_preserve_shell: bool
    power_sums: dict  # 2k -> (observed, expected) exact integers
    verified_degree: int

    @property
    def verified(self) -> bool:
        return self.generators_preserve_shell and all(a == b for a, b in self.power_sums.values())


def _orbits(X: np.ndarray, images: list[np.ndarray]) -> list[np.ndarray]:
    n = X.shape[0]
    parent = np.arange(n)

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    for img in images:
        for i, j in enumerate(img):
            ri, rj = find(i), find(int(j))
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(n)])
    return [np.flatnonzero(roots == r) for r in np.unique(roots)]


def shell_design_check(X: np.ndarray, max_degree: int = 11) -> ShellDesignReport:
    """Exact equi-weighted design test for a centrally symmetric lattice shell.

    For unit vectors, ``sum_{x,y} <x,y>^{2k} >= N^2 c_k`` with equality exactly
    when every degree-``2k`` moment is matched.  The double sum is reduced to
    one row per orbit of the group generated by codeword sign changes and
    the projective coordinate maps; each generator is first checked to map
    the shell onto itself.  Inner products are integers, so every sum is
    exact.
    """
    N, dim = X.shape
    norm2 = int((X[0] * X[0]).sum())
    if not np.all((X * X).sum(axis=1) == norm2):
        raise ValueError("rows do not share a norm")
    keys = _row_keys(X)
    index = {k: i for i, k in enumerate(keys)}
    if len(index) != N:
        raise ValueError("repeated rows")
    if any(k not in index for k in _row_keys(-X)):
        raise ValueError("shell is not centrally symmetric")
    images = []
    preserved = True
    for gen in _shell_generators():
        img_keys = _row_keys(_apply(gen, X))
        try:
            images.append(np.array([index[k] for k in img_keys]))
        except KeyError:
            preserved = False
            break
    orbits = _orbits(X, images) if preserved else [np.arange(N)]
    power_sums = {}
    verified = 1  # odd degrees vanish by central symmetry
    for k in range(1, max_degree // 2 + 1):
        observed = 0
        for orb in orbits:
            ip = X @ X[orb[0]]
            values, counts = np.unique(ip, return_counts=True)
            observed += len(orb) * sum(int(c) * int(v) ** (2 * k) for v, c in zip(values, counts))
        expected_frac = N * N * sphere_moment(dim, (2 * k,) + (0,) * (dim - 1)) * norm2 ** (2 * k)
        expected = expected_frac.numerator if expected_frac.denominator == 1 else expected_frac
        power_sums[2 * k] = (observed, expected)
        if observed == expected and verified == 2 * k - 1:
            verified = 2 * k + 1
    return ShellDesignReport(N, Fraction(norm2, 8), [len(o) for o in orbits], preserved, power_sums, verified)


# ---------------------------------------------------------------- shorter Leech embedding


def _sqrt2_integral(v) -> int:
    """``v`` as an integer, where ``v`` may be a rational or a surd in ``sqrt 2``."""
    if isinstance(v, Surd):
        raise NonIntegralImageError(f"coordinate {v} is not an integer")
    f = Fraction(v)
    if f.denominator != 1:
        raise NonIntegralImageError(f"coordinate {v} is not an integer")
    return f.numerator


def shorter_leech_embed(y) -> tuple[tuple[int, ...], bool]:
    """Map ``y`` in ``R^23`` by ``(y1, y1, y2-y3, y2+y3, ...)/sqrt 2``, then scale by ``sqrt 8``.

    Returns the integer vector ``u`` and whether ``u/sqrt 8`` is a Leech
    vector with equal first two coordinates (hence a shorter-Leech point).
    Entries of ``y`` may be rationals or surds; a non-integral image raises
    :class:`NonIntegralImageError`.
    """
    y = list(y)
    if len(y) != 23:
        raise ValueError("expected 23 coordinates")
    raw = [2 * y[0], 2 * y[0]]
    for k in range(1, 23, 2):
        raw += [2 * (y[k] - y[k + 1]), 2 * (y[k] + y[k + 1])]
    u = tuple(_sqrt2_integral(v) for v in raw)
    return u, u[0] == u[1] and leech_contains(u)


def random_signed_permutation(base, rng: random.Random):
    v = list(base)
    rng.shuffle(v)
    return [x * rng.choice((1, -1)) for x in v]


# ---------------------------------------------------------------- Barnes-Wall 16


@lru_cache(maxsize=1)
def bw16_generator() -> tuple[tuple[int, ...], ...]:
    text = resources.files("artifact").joinpath("data/bw16.txt").read_text()
    rows = [tuple(int(x) for x in line.split()) for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if len(rows) != 16 or any(len(r) != 16 for r in rows):
        raise RuntimeError("generator matrix must be 16 x 16")
    return tuple(rows)


def bw16_determinant() -> int:
    X = bw16_generator()
    if any(X[i][j] for i in range(16) for j in range(i + 1, 16)):
        raise RuntimeError("generator matrix is expected to be lower triangular")
    return math.prod(X[i][i] for i in range(16))


def bw16_coordinates(u) -> list[Fraction]:
    """The unique rational ``c`` with ``c X = u``, by back substitution."""
    X = bw16_generator()
    u = [Fraction(int(v)) for v in u]
    if len(u) != 16:
        raise ValueError("expected 16 coordinates")
    c = [Fraction(0)] * 16
    for j in range(15, -1, -1):
        acc = u[j] - sum(c[i] * X[i][j] for i in range(j + 1, 16))
        c[j] = acc / X[j][j]
    return c


def bw16_contains(u) -> bool:
    return all(x.denominator == 1 for x in bw16_coordinates(u))


# ---------------------------------------------------------------- D4 family


def _vectors_of_norm(sq: int, dim: int = 4):
    bound = math.isqrt(sq)
    for v in itertools.product(range(-bound, bound + 1), repeat=dim):
        if sum(x * x for x in v) == sq:
            yield v


def d4_shell(which: str, norm) -> list[tuple[int, ...]]:
    """Integer-scaled vectors of the given squared norm.

    ``D4`` vectors are returned as is; ``D4star`` and ``D4prime`` vectors as
    ``w = 2y`` with ``y`` in D4*.  The true squared norm is ``|w|^2/4`` for
    D4* and ``|w|^2/2`` for D4'.
    """
    norm = Fraction(norm)
    if which == "D4":
        if norm.denominator != 1:
            return []
        return [v for v in _vectors_of_norm(int(norm)) if sum(v) % 2 == 0]
    scale = {"D4star": 4, "D4prime": 2}.get(which)
    if scale is None:
        raise ValueError(f"unknown lattice {which!r}")
    sq = norm * scale
    if sq.denominator != 1:
        return []
    return [v for v in _vectors_of_norm(int(sq)) if len({x % 2 for x in v}) == 1]


def _true_squares(which: str, v) -> tuple[Fraction, ...]:
    div = {"D4": 1, "D4star": 4, "D4prime": 2}[which]
    return tuple(Fraction(x * x, div) for x in v)


def _orbit_of_squares(n: int, squares) -> GCVOrbit:
    """The corner-vector orbit through a point with these squared coordinates."""
    nonzero = [q for q in squares if q]
    distinct = set(nonzero)
    if len(distinct) == 1:
        return GCVOrbit(n, 1, len(nonzero) - 1)
    lone = [q for q in distinct if nonzero.count(q) == 1]
    if len(distinct) == 2 and lone:
        head = lone[0]
        (tail,) = distinct - {head}
        return GCVOrbit(n, head / tail, len(nonzero) - 1)
    raise ValueError(f"squared coordinates {tuple(squares)} are not of corner-vector shape")


def gcv_decomposition(which: str, norm) -> list[tuple[GCVOrbit, int]]:
    """Split a shell into hyperoctahedral orbits of scaled corner vectors, with their sizes."""
    seen: dict[tuple, int] = {}
    for v in d4_shell(which, norm):
        key = tuple(sorted((abs(x) for x in v), reverse=True))
        seen[key] = seen.get(key, 0) + 1
    return [(_orbit_of_squares(len(key), _true_squares(which, key)), count) for key, count in sorted(seen.items(), reverse=True)]


def e_shell_design(norm, parts: tuple[str, ...] = ("D4", "D4prime")) -> WeightedDesign:
    """The normalized union of the chosen shells of the given norm, equal weight per point."""
    points = set()
    for which in parts:
        for v in d4_shell(which, norm):
            signs = tuple((x > 0) - (x < 0) for x in v)
            sq = _true_squares(which, v)
            total = sum(sq)
            points.add((signs, tuple(q / total for q in sq)))
    if not points:
        raise ValueError("empty shell")
    counts: dict[tuple, int] = {}
    for _, sq in points:
        key = tuple(sorted(sq, reverse=True))
        counts[key] = counts.get(key, 0) + 1
    W = Fraction(1, len(points))
    return WeightedDesign(4, tuple((_orbit_of_squares(4, key), W) for key in sorted(counts, reverse=True)), FULL)
