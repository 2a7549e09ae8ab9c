"""Standard angular momentum coupling symbols in the magnetic basis.

Vector coupling coefficients follow the Condon-Shortley convention (all
real, highest-weight component positive) and are evaluated from the
single-sum closed form with exact rational internals: the alternating sum
and the squared prefactor are accumulated as Fractions and rounded exactly
once at the end.  An independent construction by explicit highest-weight
vectors and lowering is provided as a cross-check oracle; the two routes
are compared by the verification suite, never merged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidArgumentError, TableConflictError
from .qarith import HalfInt, ToleranceRule
from .report import Check, VerificationReport

__all__ = [
    "triangle",
    "cg",
    "threejm",
    "ninej",
    "SymbolKey",
    "CouplingTable",
    "default_table",
    "clear_cache",
    "export_table",
    "load_table",
    "cg_lowering_table",
    "verify_cg_against_lowering",
    "verify_cg_orthogonality",
]

_FACT: list[int] = [1]


def _fact(n: int) -> int:
    while len(_FACT) <= n:
        _FACT.append(_FACT[-1] * len(_FACT))
    return _FACT[n]


def _twice(value) -> int:
    return HalfInt.of(value).twice


def _check_jm(tj: int, tm: int) -> None:
    if tj < 0:
        raise InvalidArgumentError(f"negative angular momentum 2j = {tj}")
    if (tj + tm) % 2 != 0:
        raise InvalidArgumentError(f"2j = {tj} and 2m = {tm} have different parity")


def triangle(j1, j2, j3) -> bool:
    """Triangle rule with integer perimeter."""
    t1, t2, t3 = _twice(j1), _twice(j2), _twice(j3)
    if min(t1, t2, t3) < 0:
        return False
    if (t1 + t2 + t3) % 2 != 0:
        return False
    return abs(t1 - t2) <= t3 <= t1 + t2


@dataclass(frozen=True)
class SymbolKey:
    """Cache key: twice-integer labels plus a variant tag."""

    variant: str
    twice_j: tuple[int, ...]
    twice_m: tuple[int, ...]

    def __post_init__(self):
        if self.variant not in ("cg", "threejm", "ninej"):
            raise InvalidArgumentError(f"unknown symbol variant {self.variant!r}")
        if self.variant == "ninej":
            if len(self.twice_j) != 9 or self.twice_m:
                raise InvalidArgumentError("ninej keys carry nine j labels and no m labels")
        else:
            if len(self.twice_j) != 3 or len(self.twice_m) != 3:
                raise InvalidArgumentError("coupling keys carry three j and three m labels")
            for tj, tm in zip(self.twice_j, self.twice_m):
                _check_jm(tj, tm)
                if abs(tm) > tj:
                    raise InvalidArgumentError(f"|2m| = {abs(tm)} exceeds 2j = {tj}")


class CouplingTable:
    """Memo table with hit/miss counters and idempotent insertion."""

    def __init__(self):
        self._store: dict[SymbolKey, float] = {}
        self.hits = 0
        self.misses = 0

    def lookup(self, key: SymbolKey):
        try:
            value = self._store[key]
        except KeyError:
            self.misses += 1
            return None
        self.hits += 1
        return value

    def insert(self, key: SymbolKey, value: float) -> float:
        stored = self._store.setdefault(key, value)
        if stored != value:
            raise TableConflictError(
                f"key {key} already stores {stored!r}, refused insert of {value!r}"
            )
        return stored

    def __len__(self) -> int:
        return len(self._store)

    def __contains__(self, key: SymbolKey) -> bool:
        return key in self._store

    def items(self):
        return self._store.items()

    def clear(self) -> None:
        self._store.clear()
        self.hits = 0
        self.misses = 0


_DEFAULT_TABLE = CouplingTable()


def default_table() -> CouplingTable:
    return _DEFAULT_TABLE


def clear_cache() -> None:
    _DEFAULT_TABLE.clear()


def _cg_exact(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> float:
    if tm1 + tm2 != tm:
        return 0.0
    if not triangle(HalfInt(tj1), HalfInt(tj2), HalfInt(tj)):
        return 0.0

    # all of these are guaranteed integers by the parity checks above
    a = (tj1 + tj2 - tj) // 2
    b = (tj1 - tj2 + tj) // 2
    c = (-tj1 + tj2 + tj) // 2
    perim1 = (tj1 + tj2 + tj) // 2 + 1

    prefactor = Fraction(
        (tj + 1)
        * _fact(a)
        * _fact(b)
        * _fact(c)
        * _fact((tj1 + tm1) // 2)
        * _fact((tj1 - tm1) // 2)
        * _fact((tj2 + tm2) // 2)
        * _fact((tj2 - tm2) // 2)
        * _fact((tj + tm) // 2)
        * _fact((tj - tm) // 2),
        _fact(perim1),
    )

    t_min = max(0, (tj2 - tj - tm1) // 2, (tj1 - tj + tm2) // 2)
    t_max = min(a, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for t in range(t_min, t_max + 1):
        denom = (
            _fact(t)
            * _fact(a - t)
            * _fact((tj1 - tm1) // 2 - t)
            * _fact((tj2 + tm2) // 2 - t)
            * _fact((tj - tj2 + tm1) // 2 + t)
            * _fact((tj - tj1 - tm2) // 2 + t)
        )
        term = Fraction((-1) ** t, denom)
        total += term
    if total == 0:
        return 0.0
    magnitude = math.sqrt(float(total * total * prefactor))
    return magnitude if total > 0 else -magnitude


def cg(j1, m1, j2, m2, j, m, table: CouplingTable | None = _DEFAULT_TABLE) -> float:
    """Vector coupling coefficient <j1 m1 j2 m2 | j m>, Condon-Shortley phases.

    Returns 0 unless m = m1 + m2 and (j1, j2, j) satisfies the triangle rule.
    Pass table=None to bypass the memo table.
    """
    tj1, tm1 = _twice(j1), _twice(m1)
    tj2, tm2 = _twice(j2), _twice(m2)
    tj, tm = _twice(j), _twice(m)
    key = SymbolKey("cg", (tj1, tj2, tj), (tm1, tm2, tm))
    if table is not None:
        cached = table.lookup(key)
        if cached is not None:
            return cached
    value = _cg_exact(tj1, tm1, tj2, tm2, tj, tm)
    if table is not None:
        table.insert(key, value)
    return value


def threejm(j1, m1, j2, m2, j3, m3, table: CouplingTable | None = _DEFAULT_TABLE) -> float:
    """3-jm symbol via the standard phase conversion from the coupling coefficient."""
    tj1, tm1 = _twice(j1), _twice(m1)
    tj2, tm2 = _twice(j2), _twice(m2)
    tj3, tm3 = _twice(j3), _twice(m3)
    key = SymbolKey("threejm", (tj1, tj2, tj3), (tm1, tm2, tm3))
    if table is not None:
        cached = table.lookup(key)
        if cached is not None:
            return cached
    base = cg(HalfInt(tj1), HalfInt(tm1), HalfInt(tj2), HalfInt(tm2), HalfInt(tj3), HalfInt(-tm3), table)
    if base == 0.0:
        value = 0.0
    else:
        exponent = (tj1 - tj2 - tm3) // 2
        sign = -1.0 if exponent % 2 else 1.0
        value = sign * base / math.sqrt(tj3 + 1)
    if table is not None:
        table.insert(key, value)
    return value


def _threejm_array(tj1: int, tj2: int, tj3: int, table: CouplingTable | None) -> np.ndarray:
    arr = np.zeros((tj1 + 1, tj2 + 1, tj3 + 1))
    for i1, tm1 in enumerate(range(-tj1, tj1 + 1, 2)):
        for i2, tm2 in enumerate(range(-tj2, tj2 + 1, 2)):
            tm3 = -tm1 - tm2
            if abs(tm3) > tj3:
                continue
            i3 = (tm3 + tj3) // 2
            arr[i1, i2, i3] = threejm(
                HalfInt(tj1), HalfInt(tm1), HalfInt(tj2), HalfInt(tm2), HalfInt(tj3), HalfInt(tm3), table
            )
    return arr


def ninej(j1, j2, j3, j4, j5, j6, j7, j8, j9, table: CouplingTable | None = _DEFAULT_TABLE) -> float:
    """9-j symbol by full contraction of the six 3-jm symbols of its rows and columns."""
    tj = tuple(_twice(x) for x in (j1, j2, j3, j4, j5, j6, j7, j8, j9))
    key = SymbolKey("ninej", tj, ())
    if table is not None:
        cached = table.lookup(key)
        if cached is not None:
            return cached
    triads = [
        (tj[0], tj[1], tj[2]),
        (tj[3], tj[4], tj[5]),
        (tj[6], tj[7], tj[8]),
        (tj[0], tj[3], tj[6]),
        (tj[1], tj[4], tj[7]),
        (tj[2], tj[5], tj[8]),
    ]
    if all(triangle(HalfInt(a), HalfInt(b), HalfInt(c)) for a, b, c in triads):
        rows = [_threejm_array(*triads[i], table) for i in range(3)]
        cols = [_threejm_array(*triads[i], table) for i in range(3, 6)]
        value = float(
            np.einsum(
                "abc,def,ghi,adg,beh,cfi->",
                rows[0],
                rows[1],
                rows[2],
                cols[0],
                cols[1],
                cols[2],
                optimize=True,
            )
        )
    else:
        value = 0.0
    if table is not None:
        table.insert(key, value)
    return value


def export_table(table: CouplingTable, path) -> int:
    """Write coupling records as '2j1 2j2 2j 2m1 2m2 2m value' lines.

    Only plain coupling entries are exported.  Values are rendered with 17
    significant digits, so reloading reproduces them bit for bit.
    """
    lines = []
    for key, value in sorted(table.items(), key=lambda kv: (kv[0].variant, kv[0].twice_j, kv[0].twice_m)):
        if key.variant != "cg":
            continue
        tj1, tj2, tj = key.twice_j
        tm1, tm2, tm = key.twice_m
        lines.append(f"{tj1} {tj2} {tj} {tm1} {tm2} {tm} {value:.17g}")
    text = "\n".join(lines) + ("\n" if lines else "")
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)
    return len(lines)


def load_table(path) -> CouplingTable:
    table = CouplingTable()
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 7:
                raise InvalidArgumentError(f"malformed coupling record: {line!r}")
            tj1, tj2, tj, tm1, tm2, tm = (int(p) for p in parts[:6])
            table.insert(SymbolKey("cg", (tj1, tj2, tj), (tm1, tm2, tm)), float(parts[6]))
    return table


def cg_lowering_table(j1, j2) -> dict[tuple[int, int, int, int], float]:
    """Independent coupling coefficients from highest weights and lowering.

    For each total j the highest-weight vector is found by orthogonalizing
    against the already-built towers inside the m = j subspace, its sign is
    fixed by a positive component on the maximal m1, and the rest of the
    tower follows by applying the total lowering operator.  Keys are
    (2m1, 2m2, 2j, 2m).
    """
    tj1, tj2 = _twice(j1), _twice(j2)
    d1, d2 = tj1 + 1, tj2 + 1

    def lower_single(td: int) -> np.ndarray:
        mat = np.zeros((td + 1, td + 1))
        for i in range(1, td + 1):
            tm = -td + 2 * i
            mat[i - 1, i] = math.sqrt(((td + tm) // 2) * ((td - tm) // 2 + 1))
        return mat

    lowering = np.kron(lower_single(tj1), np.eye(d2)) + np.kron(np.eye(d1), lower_single(tj2))

    def pair_index(tm1: int, tm2: int) -> int:
        return ((tm1 + tj1) // 2) * d2 + (tm2 + tj2) // 2

    vectors: dict[tuple[int, int], np.ndarray] = {}
    for tj in range(tj1 + tj2, abs(tj1 - tj2) - 2, -2):
        seed = np.zeros(d1 * d2)
        seed[pair_index(tj1, tj - tj1)] = 1.0
        # project out the towers with larger total j at the same m, twice for stability
        for _ in range(2):
            for tjp in range(tj + 2, tj1 + tj2 + 2, 2):
                prev = vectors[(tjp, tj)]
                seed -= prev * float(prev @ seed)
        norm = float(np.linalg.norm(seed))
        seed /= norm
        if seed[pair_index(tj1, tj - tj1)] < 0:
            seed = -seed
        vectors[(tj, tj)] = seed
        for tm in range(tj, -tj, -2):
            j_f, m_f = tj / 2.0, tm / 2.0
            vectors[(tj, tm - 2)] = (lowering @ vectors[(tj, tm)]) / math.sqrt(
                (j_f + m_f) * (j_f - m_f + 1.0)
            )

    result: dict[tuple[int, int, int, int], float] = {}
    for (tj, tm), vec in vectors.items():
        for tm1 in range(-tj1, tj1 + 1, 2):
            tm2 = tm - tm1
            if abs(tm2) > tj2:
                continue
            result[(tm1, tm2, tj, tm)] = float(vec[pair_index(tm1, tm2)])
    return result


def verify_cg_against_lowering(max_j, tol: ToleranceRule | None = None) -> VerificationReport:
    """Compare the closed-form coefficients with the lowering construction."""
    if tol is None:
        tol = ToleranceRule()
    max_t = _twice(max_j)
    report = VerificationReport(suite="wigner-core", k=None, r=None)
    for tj1 in range(0, max_t + 1):
        for tj2 in range(0, max_t + 1):
            oracle = cg_lowering_table(HalfInt(tj1), HalfInt(tj2))
            worst = 0.0
            for (tm1, tm2, tj, tm), expected in oracle.items():
                value = cg(
                    HalfInt(tj1), HalfInt(tm1), HalfInt(tj2), HalfInt(tm2), HalfInt(tj), HalfInt(tm)
                )
                worst = max(worst, abs(value - expected))
            report.add(
                Check.residual_check(f"lowering_agreement_2j1_{tj1}_2j2_{tj2}", worst, tol.abs_tol)
            )
    return report


def verify_cg_orthogonality(max_j, tol: ToleranceRule | None = None) -> VerificationReport:
    """Row orthonormality of the coupling matrix for every (j1, j2) pair."""
    if tol is None:
        tol = ToleranceRule()
    max_t = _twice(max_j)
    report = VerificationReport(suite="wigner-core-orthogonality", k=None, r=None)
    for tj1 in range(0, max_t + 1):
        for tj2 in range(0, max_t + 1):
            worst = 0.0
            pairs = [
                (tm1, tm2)
                for tm1 in range(-tj1, tj1 + 1, 2)
                for tm2 in range(-tj2, tj2 + 1, 2)
            ]
            blocks = []
            for tj in range(abs(tj1 - tj2), tj1 + tj2 + 2, 2):
                for tm in range(-tj, tj + 1, 2):
                    blocks.append(
                        [
                            cg(
                                HalfInt(tj1),
                                HalfInt(tm1),
                                HalfInt(tj2),
                                HalfInt(tm2),
                                HalfInt(tj),
                                HalfInt(tm),
                            )
                            for tm1, tm2 in pairs
                        ]
                    )
            mat = np.array(blocks)
            gram = mat @ mat.T
            worst = float(np.max(np.abs(gram - np.eye(mat.shape[0]))))
            report.add(
                Check.residual_check(f"orthonormal_2j1_{tj1}_2j2_{tj2}", worst, tol.abs_tol)
            )
    return report
