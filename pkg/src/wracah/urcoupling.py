"""Coupling calculus in the cyclic-shift eigenbasis.

The magnetic-basis coupling coefficients are carried over to the joint
eigenbasis of the Casimir and the cyclic shift by phase transforms, one
per coupled space, each space using its own root of unity of order 2j+1
and its own label family alpha = -j*r + s.  This module builds the
transformed coupling tables, the two recoupling symbols derived from
them, their orthogonality and permutation laws, the substitution of the
symmetric symbol into the 9-j contraction, transformed tensor operators,
and the matrix-element factorization check that extracts reduced
elements.

Tables are dense ndarrays indexed by s labels and are memoized per
(labels, r); r is compared bitwise, never within a tolerance, because it
is an input parameter rather than a measured quantity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, UndeterminedReducedElementError
from .qarith import HalfInt, ToleranceRule, alpha_phase, alpha_value, halfint_range
from .report import Check, VerificationReport
from .su2 import AngularSpace, _expected_ladder, basis_transform_matrix
from .wigner import cg, threejm, triangle, ninej

__all__ = [
    "cg_ur_table",
    "cg_ur",
    "f_table",
    "f_symbol",
    "fbar_table",
    "fbar_symbol",
    "alpha_labels",
    "clear_cache",
    "verify_cg_ur_unitarity",
    "verify_cg_ur_interchange",
    "verify_f_interchange",
    "verify_fbar_orthogonality",
    "verify_fbar_permutation",
    "NinejSubstitution",
    "ninej_from_fbar",
    "TensorComponents",
    "identity_tensor",
    "angular_momentum_tensor",
    "tensor_transform",
    "tensor_transform_inverse",
    "verify_tensor_transform",
    "WignerEckartResult",
    "wigner_eckart_check",
    "verify_wigner_eckart",
]

_PHASE_CACHE: dict[tuple[int, str, int], np.ndarray] = {}
_CG_UR_CACHE: dict[tuple[tuple[int, int, int], str], np.ndarray] = {}
_F_CACHE: dict[tuple[tuple[int, int, int], str], np.ndarray] = {}
_FBAR_CACHE: dict[tuple[tuple[int, int, int], str], np.ndarray] = {}


def clear_cache() -> None:
    for store in (_PHASE_CACHE, _CG_UR_CACHE, _F_CACHE, _FBAR_CACHE):
        store.clear()


def _r_key(r) -> str:
    return float(r).hex()


def _validate_s(j: HalfInt, s, label: str) -> int:
    s = int(s)
    if s < 0 or s > j.twice:
        raise InvalidArgumentError(f"{label} must lie in 0..2j = {j.twice}, got {s}")
    return s


def alpha_labels(j, r) -> list[float]:
    """The 2j+1 labels alpha = -j*r + s, s ascending."""
    j = HalfInt.of(j)
    return [alpha_value(j, r, s) for s in range(j.twice + 1)]


def _phase_matrix(j: HalfInt, r, sign: int) -> np.ndarray:
    """P[s, m_index] = exp(sign * 2*pi*i * alpha_s * m / (2j+1))."""
    key = (j.twice, _r_key(r), sign)
    cached = _PHASE_CACHE.get(key)
    if cached is not None:
        return cached
    order = j.twice + 1
    mat = np.empty((order, order), dtype=complex)
    for s in range(order):
        for col, m in enumerate(halfint_range(-j, j)):
            mat[s, col] = alpha_phase(j, r, s, m, sign)
    mat.setflags(write=False)
    _PHASE_CACHE[key] = mat
    return mat


def _cg_tensor(j1: HalfInt, j2: HalfInt, j: HalfInt) -> np.ndarray:
    """Magnetic-basis coupling coefficients as a dense (m1, m2, m) block."""
    tens = np.zeros((j1.twice + 1, j2.twice + 1, j.twice + 1))
    for i1, m1 in enumerate(halfint_range(-j1, j1)):
        for i2, m2 in enumerate(halfint_range(-j2, j2)):
            m = m1 + m2
            if abs(m.twice) > j.twice or (m.twice - j.twice) % 2:
                continue
            tens[i1, i2, (m.twice + j.twice) // 2] = cg(j1, m1, j2, m2, j, m)
    return tens


def cg_ur_table(j1, j2, j, r) -> np.ndarray:
    """Coupling coefficients between shift eigenbases, indexed [s1, s2, s].

    Entry (s1, s2, s) is the overlap of the coupled state labeled by
    (j, alpha_s) with the product of states (j1, alpha_s1) and
    (j2, alpha_s2), obtained by the triple phase transform of the
    magnetic-basis coefficients with the normalization
    [(2j1+1)(2j2+1)(2j+1)]^(-1/2).  Returned arrays are read-only and
    shared through the memo table.
    """
    j1, j2, j = HalfInt.of(j1), HalfInt.of(j2), HalfInt.of(j)
    key = ((j1.twice, j2.twice, j.twice), _r_key(r))
    cached = _CG_UR_CACHE.get(key)
    if cached is not None:
        return cached
    p1 = _phase_matrix(j1, r, -1)
    p2 = _phase_matrix(j2, r, -1)
    p = _phase_matrix(j, r, +1)
    core = _cg_tensor(j1, j2, j)
    norm = 1.0 / math.sqrt((j1.twice + 1) * (j2.twice + 1) * (j.twice + 1))
    table = norm * np.einsum("am,bn,cp,mnp->abc", p1, p2, p, core, optimize=True)
    table.setflags(write=False)
    _CG_UR_CACHE[key] = table
    return table


def cg_ur(j1, j2, s1, s2, j, s, r) -> complex:
    """Single transformed coupling coefficient; zero outside the triangle."""
    j1, j2, j = HalfInt.of(j1), HalfInt.of(j2), HalfInt.of(j)
    s1 = _validate_s(j1, s1, "s1")
    s2 = _validate_s(j2, s2, "s2")
    s = _validate_s(j, s, "s")
    return complex(cg_ur_table(j1, j2, j, r)[s1, s2, s])


def f_table(j1, j2, j3, r) -> np.ndarray:
    """First recoupling symbol, indexed [s1, s2, s3].

    Defined as (-1)^(2 j3) (2 j1 + 1)^(-1/2) times the conjugate of the
    transformed coupling coefficient that couples (j2, j3) to j1, with
    the alpha labels redistributed so the first slot carries j1.
    """
    j1, j2, j3 = HalfInt.of(j1), HalfInt.of(j2), HalfInt.of(j3)
    key = ((j1.twice, j2.twice, j3.twice), _r_key(r))
    cached = _F_CACHE.get(key)
    if cached is not None:
        return cached
    base = cg_ur_table(j2, j3, j1, r)  # [s2, s3, s1]
    sign = -1.0 if j3.twice % 2 else 1.0
    table = sign / math.sqrt(j1.twice + 1) * np.conj(np.transpose(base, (2, 0, 1)))
    table.setflags(write=False)
    _F_CACHE[key] = table
    return table


def f_symbol(j1, j2, j3, s1, s2, s3, r) -> complex:
    j1, j2, j3 = HalfInt.of(j1), HalfInt.of(j2), HalfInt.of(j3)
    s1 = _validate_s(j1, s1, "s1")
    s2 = _validate_s(j2, s2, "s2")
    s3 = _validate_s(j3, s3, "s3")
    return complex(f_table(j1, j2, j3, r)[s1, s2, s3])


def fbar_table(j1, j2, j3, r) -> np.ndarray:
    """Symmetric recoupling symbol, indexed [s1, s2, s3].

    The 3-jm block is contracted with one conjugated phase transform per
    column and normalized by [(2j1+1)(2j2+1)(2j3+1)]^(-1/2).  The result
    inherits the 3-jm permutation signs column-wise and obeys the
    conjugation law fbar* = (-1)^(j1+j2+j3) fbar.
    """
    j1, j2, j3 = HalfInt.of(j1), HalfInt.of(j2), HalfInt.of(j3)
    key = ((j1.twice, j2.twice, j3.twice), _r_key(r))
    cached = _FBAR_CACHE.get(key)
    if cached is not None:
        return cached
    core = np.zeros((j1.twice + 1, j2.twice + 1, j3.twice + 1))
    for i1, m1 in enumerate(halfint_range(-j1, j1)):
        for i2, m2 in enumerate(halfint_range(-j2, j2)):
            m3 = -(m1 + m2)
            if abs(m3.twice) > j3.twice or (m3.twice - j3.twice) % 2:
                continue
            core[i1, i2, (m3.twice + j3.twice) // 2] = threejm(j1, m1, j2, m2, j3, m3)
    p1 = _phase_matrix(j1, r, -1)
    p2 = _phase_matrix(j2, r, -1)
    p3 = _phase_matrix(j3, r, -1)
    norm = 1.0 / math.sqrt((j1.twice + 1) * (j2.twice + 1) * (j3.twice + 1))
    table = norm * np.einsum("am,bn,cp,mnp->abc", p1, p2, p3, core, optimize=True)
    table.setflags(write=False)
    _FBAR_CACHE[key] = table
    return table


def fbar_symbol(j1, j2, j3, s1, s2, s3, r) -> complex:
    j1, j2, j3 = HalfInt.of(j1), HalfInt.of(j2), HalfInt.of(j3)
    s1 = _validate_s(j1, s1, "s1")
    s2 = _validate_s(j2, s2, "s2")
    s3 = _validate_s(j3, s3, "s3")
    return complex(fbar_table(j1, j2, j3, r)[s1, s2, s3])


def verify_cg_ur_unitarity(j1, j2, r, tol: ToleranceRule | None = None) -> VerificationReport:
    """The block matrix [(s1 s2), (j s)] of coupling values must be unitary."""
    if tol is None:
        tol = ToleranceRule()
    j1, j2 = HalfInt.of(j1), HalfInt.of(j2)
    d1, d2 = j1.twice + 1, j2.twice + 1
    columns = []
    for j in halfint_range(abs(j1 - j2), j1 + j2):
        block = cg_ur_table(j1, j2, j, r).reshape(d1 * d2, j.twice + 1)
        columns.append(block)
    mat = np.concatenate(columns, axis=1)
    gram = mat.conj().T @ mat
    resolution = mat @ mat.conj().T
    report = VerificationReport(suite="cg-ur-unitarity", k=None, r=float(r))
    report.add(
        Check.residual_check(
            "columns_orthonormal",
            float(np.max(np.abs(gram - np.eye(gram.shape[0])))),
            tol.abs_tol,
        )
    )
    report.add(
        Check.residual_check(
            "identity_resolution",
            float(np.max(np.abs(resolution - np.eye(d1 * d2)))),
            tol.abs_tol,
        )
    )
    return report


def verify_cg_ur_interchange(j1, j2, r, tol: ToleranceRule | None = None) -> VerificationReport:
    """Swapping the two coupled spaces matches the magnetic-basis law.

    The magnetic-basis coefficients pick up (-1)^(j1+j2-j) under the
    interchange; the phase transforms factor through column-wise, so the
    transformed tables must satisfy the same sign rule with the swapped
    s labels.  The sign is checked by recomputation here, not assumed.
    """
    if tol is None:
        tol = ToleranceRule()
    j1, j2 = HalfInt.of(j1), HalfInt.of(j2)
    report = VerificationReport(suite="cg-ur-interchange", k=None, r=float(r))
    for j in halfint_range(abs(j1 - j2), j1 + j2):
        direct = cg_ur_table(j1, j2, j, r)
        swapped = cg_ur_table(j2, j1, j, r)
        sign = -1.0 if ((j1.twice + j2.twice - j.twice) // 2) % 2 else 1.0
        residual = float(np.max(np.abs(np.transpose(swapped, (1, 0, 2)) - sign * direct)))
        report.add(Check.residual_check(f"interchange_2j_{j.twice}", residual, tol.abs_tol))
    return report


def verify_f_interchange(j1, j2, j3, r, tol: ToleranceRule | None = None) -> VerificationReport:
    """Interchanging the last two columns scales the first symbol by (-1)^(j1+j2+j3)."""
    if tol is None:
        tol = ToleranceRule()
    j1, j2, j3 = HalfInt.of(j1), HalfInt.of(j2), HalfInt.of(j3)
    direct = f_table(j1, j2, j3, r)
    swapped = f_table(j1, j3, j2, r)
    sign = -1.0 if ((j1.twice + j2.twice + j3.twice) // 2) % 2 else 1.0
    residual = float(np.max(np.abs(np.transpose(swapped, (0, 2, 1)) - sign * direct)))
    report = VerificationReport(suite="f-interchange", k=None, r=float(r))
    report.add(Check.residual_check("last_two_columns", residual, tol.abs_tol))
    return report


def verify_fbar_orthogonality(
    j1, j2, r, tol: ToleranceRule | None = None, *, mismatched_r=None
) -> VerificationReport:
    """Both orthogonality sums of the symmetric symbol.

    Summing conj(fbar) * fbar over the third column, weighted by 2j3+1,
    must resolve the identity on the (s1, s2) pairs; summing over the
    first two columns must give delta(j3, j3') delta(s3, s3')/(2j3+1).
    The family parameter has to be one and the same in every factor;
    mismatched_r substitutes a different value into the second factor as
    a negative control, which makes the checks fail.
    """
    if tol is None:
        tol = ToleranceRule()
    j1, j2 = HalfInt.of(j1), HalfInt.of(j2)
    r2 = r if mismatched_r is None else mismatched_r
    d1, d2 = j1.twice + 1, j2.twice + 1
    js = halfint_range(abs(j1 - j2), j1 + j2)

    report = VerificationReport(suite="fbar-orthogonality", k=None, r=float(r))

    resolved = np.zeros((d1, d2, d1, d2), dtype=complex)
    for j3 in js:
        first = fbar_table(j1, j2, j3, r)
        second = first if mismatched_r is None else fbar_table(j1, j2, j3, r2)
        resolved += (j3.twice + 1) * np.einsum("abc,xyc->abxy", np.conj(first), second)
    eye = np.einsum("ax,by->abxy", np.eye(d1), np.eye(d2))
    report.add(
        Check.residual_check(
            "third_column_sum_resolves_identity",
            float(np.max(np.abs(resolved - eye))),
            tol.abs_tol,
        )
    )

    worst = 0.0
    probe = list(js) + [js[-1] + 1]  # one label beyond the triangle range
    for ja in probe:
        first = fbar_table(j1, j2, ja, r)
        for jb in probe:
            second = fbar_table(j1, j2, jb, r2)
            overlap = np.einsum("abc,abd->cd", np.conj(first), second)
            expected = np.zeros_like(overlap)
            if ja.twice == jb.twice and triangle(j1, j2, ja):
                expected = np.eye(ja.twice + 1) / (ja.twice + 1)
            worst = max(worst, float(np.max(np.abs(overlap - expected))))
    report.add(Check.residual_check("pair_sum_orthogonality", worst, tol.abs_tol))
    return report


_COLUMN_PERMUTATIONS = [
    ((0, 1, 2), False),
    ((1, 2, 0), False),
    ((2, 0, 1), False),
    ((1, 0, 2), True),
    ((0, 2, 1), True),
    ((2, 1, 0), True),
]


def verify_fbar_permutation(j1, j2, j3, r, tol: ToleranceRule | None = None) -> VerificationReport:
    """Column permutations and complex conjugation of the symmetric symbol.

    Even permutations leave every value fixed; odd permutations and
    conjugation both scale by (-1)^(j1+j2+j3).  Checked entry by entry
    for all label triples.
    """
    if tol is None:
        tol = ToleranceRule()
    js = (HalfInt.of(j1), HalfInt.of(j2), HalfInt.of(j3))
    base = fbar_table(*js, r)
    odd_sign = -1.0 if ((js[0].twice + js[1].twice + js[2].twice) // 2) % 2 else 1.0
    report = VerificationReport(suite="fbar-permutation", k=None, r=float(r))
    dims = tuple(j.twice + 1 for j in js)
    for perm, is_odd in _COLUMN_PERMUTATIONS:
        permuted = fbar_table(js[perm[0]], js[perm[1]], js[perm[2]], r)
        sign = odd_sign if is_odd else 1.0
        worst = 0.0
        for s1 in range(dims[0]):
            for s2 in range(dims[1]):
                for s3 in range(dims[2]):
                    s = (s1, s2, s3)
                    lhs = permuted[s[perm[0]], s[perm[1]], s[perm[2]]]
                    worst = max(worst, abs(lhs - sign * base[s1, s2, s3]))
        tag = "".join(str(p + 1) for p in perm)
        kind = "odd" if is_odd else "even"
        report.add(Check.residual_check(f"{kind}_permutation_{tag}", worst, tol.abs_tol))
    conj_residual = float(np.max(np.abs(np.conj(base) - odd_sign * base)))
    report.add(Check.residual_check("conjugation_law", conj_residual, tol.abs_tol))
    return report


@dataclass(frozen=True)
class NinejSubstitution:
    """Outcome of replacing the six 3-jm blocks by symmetric symbols."""

    value: complex
    reference: float
    residual: float

    def to_dict(self) -> dict:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "reference": self.reference,
            "residual": self.residual,
        }


def ninej_from_fbar(j1, j2, j3, j4, j5, j6, j7, j8, j9, r) -> NinejSubstitution:
    """9-j evaluation with symmetric symbols in place of the 3-jm blocks.

    The three row symbols enter as they are and the three column symbols
    enter conjugated, so that each shift-basis label is paired with its
    own conjugate and the family phases cancel identically.  The result
    is compared against the magnetic-basis 9-j contraction; the residual
    is reported, never corrected.
    """
    js = [HalfInt.of(x) for x in (j1, j2, j3, j4, j5, j6, j7, j8, j9)]
    rows = [
        fbar_table(js[0], js[1], js[2], r),
        fbar_table(js[3], js[4], js[5], r),
        fbar_table(js[6], js[7], js[8], r),
    ]
    cols = [
        np.conj(fbar_table(js[0], js[3], js[6], r)),
        np.conj(fbar_table(js[1], js[4], js[7], r)),
        np.conj(fbar_table(js[2], js[5], js[8], r)),
    ]
    value = complex(
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
    reference = ninej(*js)
    return NinejSubstitution(value=value, reference=reference, residual=abs(value - reference))


@dataclass(frozen=True)
class TensorComponents:
    """Irreducible tensor family on a pair of angular spaces.

    spherical[i] is the matrix of the component with magnetic label
    m = -rank + i, mapping the ket space into the bra space.  transformed,
    when present, holds the 2*rank+1 phase-mixed components for the stated
    family parameter.
    """

    rank: HalfInt
    bra: AngularSpace
    ket: AngularSpace
    spherical: tuple[np.ndarray, ...]
    r: float | None = None
    transformed: tuple[np.ndarray, ...] | None = None

    def __post_init__(self):
        rank = HalfInt.of(self.rank)
        object.__setattr__(self, "rank", rank)
        if rank.twice < 0:
            raise InvalidArgumentError("tensor rank must be nonnegative")
        count = rank.twice + 1
        if len(self.spherical) != count:
            raise InvalidArgumentError(
                f"rank {rank} carries {count} components, got {len(self.spherical)}"
            )
        shape = (self.bra.dim, self.ket.dim)
        for part in self.spherical:
            if part.shape != shape:
                raise InvalidArgumentError(f"component shape {part.shape} does not match {shape}")
        if self.transformed is not None and len(self.transformed) != count:
            raise InvalidArgumentError("transformed component count mismatch")


def identity_tensor(j) -> TensorComponents:
    """The rank-0 tensor whose single component is the identity."""
    space = AngularSpace(HalfInt.of(j))
    return TensorComponents(
        rank=HalfInt(0),
        bra=space,
        ket=space,
        spherical=(np.eye(space.dim, dtype=complex),),
    )


def angular_momentum_tensor(j, rank: int) -> TensorComponents:
    """Irreducible tensors built out of the angular momentum itself.

    Rank 1 is the spherical vector (J-/sqrt2, J3, -J+/sqrt2); higher
    integer ranks come from repeated coupling with that vector using the
    magnetic-basis coefficients.  Components vanish identically once the
    rank exceeds 2j.
    """
    space = AngularSpace(HalfInt.of(j))
    if not isinstance(rank, int) or rank < 1:
        raise InvalidArgumentError(f"tensor rank must be a positive integer, got {rank!r}")
    jplus = _expected_ladder(space, +1)
    jminus = _expected_ladder(space, -1)
    jz = np.diag([float(m) for m in space.m_values()]).astype(complex)
    vector = (jminus / math.sqrt(2.0), jz, -jplus / math.sqrt(2.0))
    parts = vector
    for target in range(2, rank + 1):
        prev = parts
        built = []
        for iq, q in enumerate(range(-target, target + 1)):
            comp = np.zeros((space.dim, space.dim), dtype=complex)
            for i1, q1 in enumerate(range(-(target - 1), target)):
                q2 = q - q1
                if abs(q2) > 1:
                    continue
                weight = cg(HalfInt(2 * (target - 1)), HalfInt(2 * q1), HalfInt(2), HalfInt(2 * q2), HalfInt(2 * target), HalfInt(2 * q))
                if weight != 0.0:
                    comp += weight * (prev[i1] @ vector[q2 + 1])
            built.append(comp)
        parts = tuple(built)
    return TensorComponents(rank=HalfInt.of(rank), bra=space, ket=space, spherical=tuple(parts))


def tensor_transform(t: TensorComponents, r) -> TensorComponents:
    """Phase-mix the spherical components into the shift-labeled family.

    Component s is (2k+1)^(-1/2) sum_m exp(2 pi i alpha_s m/(2k+1)) T_m,
    the same unitary map that carries the state basis over.
    """
    mix = basis_transform_matrix(t.rank, r)
    stack = np.stack(t.spherical)
    transformed = np.einsum("ms,mij->sij", mix, stack)
    return TensorComponents(
        rank=t.rank,
        bra=t.bra,
        ket=t.ket,
        spherical=t.spherical,
        r=float(r),
        transformed=tuple(transformed[s] for s in range(transformed.shape[0])),
    )


def tensor_transform_inverse(t: TensorComponents) -> tuple[np.ndarray, ...]:
    """Recover the spherical components from the transformed family."""
    if t.transformed is None or t.r is None:
        raise InvalidArgumentError("tensor carries no transformed components")
    mix = basis_transform_matrix(t.rank, t.r)
    stack = np.stack(t.transformed)
    recovered = np.einsum("ms,sij->mij", np.conj(mix), stack)
    return tuple(recovered[i] for i in range(recovered.shape[0]))


def verify_tensor_transform(j, rank: int, r, tol: ToleranceRule | None = None) -> VerificationReport:
    """Unitarity round trip and the period-two relabeling of the component map."""
    if tol is None:
        tol = ToleranceRule()
    tensor = identity_tensor(j) if rank == 0 else angular_momentum_tensor(j, rank)
    moved = tensor_transform(tensor, r)
    back = tensor_transform_inverse(moved)
    worst = max(
        float(np.max(np.abs(orig - rec))) for orig, rec in zip(tensor.spherical, back)
    )
    report = VerificationReport(suite="tensor-transform", k=None, r=float(r))
    report.add(Check.residual_check("round_trip", worst, tol.abs_tol))

    count = tensor.rank.twice + 1
    mix = basis_transform_matrix(tensor.rank, r)
    gram = mix.conj().T @ mix
    report.add(
        Check.residual_check(
            "component_map_unitary", float(np.max(np.abs(gram - np.eye(count)))), tol.abs_tol
        )
    )

    if tensor.rank.is_integer:
        shifted = tensor_transform(tensor, float(r) + 2.0)
        cyclic = max(
            float(np.max(np.abs(shifted.transformed[s] - moved.transformed[(s + 1) % count])))
            for s in range(count)
        )
        report.add(Check.residual_check("family_shift_relabels_cyclically", cyclic, tol.abs_tol))
    return report


@dataclass(frozen=True)
class WignerEckartResult:
    """Reduced matrix element and factorization quality."""

    reduced: complex
    max_residual: float
    ratio_spread: float
    admissible: int

    def to_dict(self) -> dict:
        return {
            "reduced": {"re": self.reduced.real, "im": self.reduced.imag},
            "max_residual": self.max_residual,
            "ratio_spread": self.ratio_spread,
            "admissible": self.admissible,
        }


def wigner_eckart_check(t: TensorComponents, r, *, floor: float = 1e-8) -> WignerEckartResult:
    """Factorize shift-basis matrix elements through the first symbol.

    Every matrix element of a transformed component between shift
    eigenstates must equal one common reduced element times the
    corresponding first-symbol value.  The reduced element is taken as
    the median of the elementwise ratios over entries whose symbol
    modulus exceeds the floor; when no entry qualifies the element is
    undetermined and an error is raised.
    """
    moved = t if (t.transformed is not None and t.r == float(r)) else tensor_transform(t, r)
    v1 = basis_transform_matrix(t.bra.j, r)
    v2 = basis_transform_matrix(t.ket.j, r)
    stack = np.stack(moved.transformed)
    elements = np.einsum("ma,xmn,nb->axb", np.conj(v1), stack, v2)

    symbols = f_table(t.bra.j, t.ket.j, t.rank, r)  # [s1, s2, s_k]
    aligned = np.transpose(symbols, (0, 2, 1))  # -> [s1, s_k, s2]
    mask = np.abs(aligned) > floor
    if not np.any(mask):
        raise UndeterminedReducedElementError(
            "every symbol value vanishes; the reduced element is undetermined"
        )
    ratios = elements[mask] / aligned[mask]
    reduced = complex(np.median(ratios.real), np.median(ratios.imag))
    spread = float(np.max(np.abs(ratios - reduced)))
    residual = float(np.max(np.abs(elements - reduced * aligned)))
    return WignerEckartResult(
        reduced=reduced,
        max_residual=residual,
        ratio_spread=spread,
        admissible=int(np.count_nonzero(mask)),
    )


def verify_wigner_eckart(
    j, ranks, r, tol: ToleranceRule | None = None
) -> VerificationReport:
    """Factorization checks for tensors built from the angular momentum."""
    if tol is None:
        tol = ToleranceRule()
    j = HalfInt.of(j)
    report = VerificationReport(suite="wigner-eckart", k=None, r=float(r))
    for rank in ranks:
        rank = int(rank)
        tensor = identity_tensor(j) if rank == 0 else angular_momentum_tensor(j, rank)
        result = wigner_eckart_check(tensor, r)
        report.add(
            Check.residual_check(f"rank_{rank}_ratio_spread", result.ratio_spread, tol.abs_tol)
        )
        report.add(
            Check.residual_check(f"rank_{rank}_factorization", result.max_residual, tol.abs_tol)
        )
        if rank == 0:
            closed = abs(result.reduced - math.sqrt(j.twice + 1))
            report.add(Check.residual_check("scalar_reduced_closed_form", closed, tol.abs_tol))
    return report
