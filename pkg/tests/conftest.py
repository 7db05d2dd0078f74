"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hklattice import Lattice, vec


def random_unimodular(rng: random.Random, n: int, steps: int = 8):
    """Product of integer elementary operations; determinant +-1."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        op = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if op == 0 and i != j:
            c = rng.choice([-2, -1, 1, 2])
            for k in range(n):
                m[i][k] += c * m[j][k]
        elif op == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        elif op == 2:
            for k in range(n):
                m[i][k] = -m[i][k]
    return m


def conjugate_gram(gram, t):
    """t^T * gram * t over exact rationals."""
    n = len(gram)
    gt = [[sum(Fraction(gram[i][k]) * t[k][j] for k in range(n)) for j in range(n)]
          for i in range(n)]
    return [[sum(Fraction(t[k][i]) * gt[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def random_hyperbolic_lattice(rng: random.Random, rank: int, steps: int = 6) -> Lattice:
    """Random even lattice of signature (1, rank-1) with a rational zero."""
    base = [[0] * rank for _ in range(rank)]
    base[0][0] = 2
    for i in range(1, rank):
        base[i][i] = -2 * rng.choice([1, 1, 1, 2])
    t = random_unimodular(rng, rank, steps)
    return Lattice.from_rows(conjugate_gram(base, t))


def wall_reflection_is_integral(lat: Lattice, coords) -> bool:
    """q(d) divides 2 (d, e_i) for all i, so R_d preserves integer vectors."""
    n = lat.rank
    gd = [sum(lat.gram[i][j] * coords[j] for j in range(n)) for i in range(n)]
    q = sum(coords[i] * gd[i] for i in range(n))
    if q >= 0:
        return False
    return all((2 * x) % q == 0 for x in gd)


def random_integral_walls(rng: random.Random, lat: Lattice, h, max_walls: int,
                          tries: int = 80) -> list[tuple[int, ...]]:
    """Wall candidates with q(d) < 0, (d, h) > 0 and integral reflection."""
    out: list[tuple[int, ...]] = []
    seen = set()
    n = lat.rank
    for _ in range(tries):
        if len(out) >= max_walls:
            break
        coords = tuple(rng.randint(-3, 3) for _ in range(n))
        if all(c == 0 for c in coords) or coords in seen:
            continue
        if not wall_reflection_is_integral(lat, coords):
            continue
        pairing = lat.bilinear(vec(coords), h)
        if pairing == 0:
            continue
        if pairing < 0:
            coords = tuple(-c for c in coords)
        seen.add(coords)
        seen.add(tuple(-c for c in coords))
        out.append(coords)
    return out


def brute_force_diagonal_zero(entries, box: int):
    """Exhaustive integer search for a nonzero zero of sum a_i x_i^2.

    Independent of the package's decision path: plain meet-in-the-middle
    value table over the full box.  Returns one zero or None.
    """
    r = len(entries)
    split = (r + 1) // 2
    front, back = entries[:split], entries[split:]
    table: dict[int, tuple] = {}

    def fill(idx, acc, prefix):
        if idx == len(front):
            key = acc
            if key not in table:
                table[key] = tuple(prefix)
            return
        for x in range(-box, box + 1):
            prefix.append(x)
            fill(idx + 1, acc + front[idx] * x * x, prefix)
            prefix.pop()

    fill(0, 0, [])

    found = []

    def scan(idx, acc, suffix):
        if found:
            return
        if idx == len(back):
            pre = table.get(-acc)
            if pre is not None:
                candidate = pre + tuple(suffix)
                if any(candidate):
                    found.append(candidate)
            # the stored prefix may be all-zero; retry nonzero suffix match
            if not found and -acc == 0 and any(suffix):
                found.append(tuple([0] * split) + tuple(suffix))
            return
        for x in range(-box, box + 1):
            suffix.append(x)
            scan(idx + 1, acc + back[idx] * x * x, suffix)
            suffix.pop()

    scan(0, 0, [])
    return found[0] if found else None


def local_symbol_oracle(a: int, b: int, p: int) -> int:
    """Brute-force Hilbert symbol at a small prime: primitive solutions of
    z^2 = a x^2 + b y^2 modulo p^k for k large relative to the valuations."""
    va = 0
    aa = abs(a)
    while aa % p == 0:
        aa //= p
        va += 1
    vb = 0
    bb = abs(b)
    while bb % p == 0:
        bb //= p
        vb += 1
    k = va + vb + (5 if p == 2 else 3)
    mod = p ** k
    squares_any = set()
    squares_unit = set()
    for z in range(mod):
        s = z * z % mod
        squares_any.add(s)
        if z % p:
            squares_unit.add(s)
    for x in range(mod):
        for y in range(mod):
            val = (a * x * x + b * y * y) % mod
            if x % p or y % p:
                if val in squares_any:
                    return 1
            elif val in squares_unit:
                return 1
    return -1
