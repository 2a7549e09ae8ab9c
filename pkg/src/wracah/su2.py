"""su(2) from the two deformed modes via a polar pair of operators.

The Hermitean modulus H = sqrt(N1(N2+1)) and a unitary cyclic shift built
from single-step ladders plus an order-(k-1) wraparound term generate the
angular momentum algebra on the subspace of constant total occupation
n1 + n2 = k - 1, with 2j = k - 1.  The shift depends on a real family
parameter r through the wrap phase angle pi*(k-1)*r; its eigenbasis is a
phase-weighted discrete Fourier transform of the magnetic basis and is the
common eigenbasis of the Casimir and the shift.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateFactorialError,
    InvalidArgumentError,
    SubspaceLeakageError,
    UnsupportedLimitError,
)
from .fock import FockSpace, Operator, commutator, quon_operators
from .qarith import (
    HalfInt,
    ToleranceRule,
    _as_fraction,
    _require_order,
    alpha_phase,
    alpha_value,
    halfint_range,
    phase_from_turn,
    q_factorial,
    q_factorial_is_degenerate,
    q_power,
)
from .report import Check, VerificationReport
from .serialize import complex_record, matrix_to_json_entries

__all__ = [
    "ShiftParams",
    "AngularSpace",
    "Su2Ops",
    "ShiftEigenbasis",
    "modulus_op",
    "shift_op",
    "clock_op",
    "restrict_to_angular",
    "angular_indices",
    "angular_momentum_ops",
    "verify_su2",
    "basis_transform_matrix",
    "shift_eigenvalue",
    "shift_eigenbasis",
    "verify_shift_eigenbasis",
    "clock_shift_monomial",
    "verify_sine_algebra",
]


@dataclass(frozen=True)
class ShiftParams:
    """Order k >= 2 and the real wrap-family parameter r."""

    k: int
    r: float

    def __post_init__(self):
        _require_order(self.k)
        if not isinstance(self.r, numbers.Real) or not math.isfinite(float(self.r)):
            raise InvalidArgumentError(f"family parameter r must be a finite real, got {self.r!r}")

    @property
    def j(self) -> HalfInt:
        return HalfInt(self.k - 1)

    @property
    def phase_angle(self) -> float:
        """The wrap angle pi*(k-1)*r."""
        return math.pi * (self.k - 1) * float(self.r)

    def _wrap_turn(self):
        return _as_fraction(self.r) * (self.k - 1) / 2

    @property
    def wrap_phase(self) -> complex:
        """exp(i * phase_angle), evaluated through the exact turn when r is rational."""
        return phase_from_turn(self._wrap_turn() % 1)

    @property
    def half_wrap_phase(self) -> complex:
        return phase_from_turn((self._wrap_turn() / 2) % 1)

    @property
    def angular_space(self) -> "AngularSpace":
        return AngularSpace(self.j)


@dataclass(frozen=True)
class AngularSpace:
    """Spin-j space spanned by |j m> with m ascending from -j to j."""

    j: HalfInt

    def __post_init__(self):
        if not isinstance(self.j, HalfInt):
            object.__setattr__(self, "j", HalfInt.of(self.j))
        if self.j.twice < 0:
            raise InvalidArgumentError("j must be nonnegative")

    @property
    def dim(self) -> int:
        return self.j.twice + 1

    @property
    def k(self) -> int:
        return self.j.twice + 1

    def m_values(self) -> list[HalfInt]:
        return halfint_range(-self.j, self.j)

    def index_of_m(self, m) -> int:
        m = HalfInt.of(m)
        if abs(m.twice) > self.j.twice or (m.twice - self.j.twice) % 2 != 0:
            raise InvalidArgumentError(f"m = {m} is not a magnetic label for j = {self.j}")
        return (m.twice + self.j.twice) // 2


def angular_indices(k: int) -> list[int]:
    """Fock indices of the n1 + n2 = k - 1 states, ordered by ascending m."""
    k = _require_order(k)
    space = FockSpace(k)
    tj = k - 1
    return [space.index((tj + tm) // 2, (tj - tm) // 2) for tm in range(-tj, tj + 1, 2)]


def modulus_op(k: int) -> Operator:
    """The Hermitean modulus sqrt(N1 (N2 + 1)) of the ladder polar splitting."""
    space = FockSpace(_require_order(k))
    diag = [math.sqrt(n1 * (n2 + 1)) for n1 in range(space.k) for n2 in range(space.k)]
    return Operator.diagonal(space, diag)


def shift_op(params: ShiftParams) -> Operator:
    """Unitary cyclic shift: one bracket per mode, each a single-step ladder
    plus a phased order-(k-1) wraparound divided by [k-1]!."""
    k = params.k
    if q_factorial_is_degenerate(k - 1, k):
        raise DegenerateFactorialError(f"[{k - 1}]! vanishes at order {k}")
    ops = quon_operators(k)
    half = params.half_wrap_phase
    fact = q_factorial(k - 1, k)
    wrap1 = ops.lower1.power(k - 1) * (half / fact)
    wrap2 = ops.raise2.power(k - 1) * (half / fact)
    bracket1 = ops.raise1 + wrap1
    bracket2 = ops.lower2 + wrap2
    return bracket1 @ bracket2


def clock_op(params: ShiftParams) -> Operator:
    """Diagonal unitary q^(N1 - N2), restricted to the angular subspace."""
    k = params.k
    space = FockSpace(k)
    diag = [q_power(n1 - n2, k) for n1 in range(k) for n2 in range(k)]
    return restrict_to_angular(Operator.diagonal(space, diag))


def restrict_to_angular(op: Operator, k: int | None = None, tol: ToleranceRule | None = None) -> Operator:
    """Project onto the n1 + n2 = k - 1 subspace, refusing leaky operators."""
    if not isinstance(op.space, FockSpace):
        raise InvalidArgumentError("restriction expects an operator on a Fock space")
    if k is None:
        k = op.space.k
    elif k != op.space.k:
        raise InvalidArgumentError(f"order {k} does not match the operator space order {op.space.k}")
    if tol is None:
        tol = ToleranceRule.for_order(k)
    idx = angular_indices(k)
    outside = np.setdiff1d(np.arange(op.space.dim), idx)
    leak = op.mat[np.ix_(outside, idx)]
    if leak.size:
        worst = float(np.max(np.linalg.norm(leak, axis=0)))
        if worst > tol.abs_tol:
            raise SubspaceLeakageError(
                f"column weight {worst:.3e} escapes the angular subspace (tol {tol.abs_tol:.1e})"
            )
    sub = op.mat[np.ix_(idx, idx)]
    return Operator(AngularSpace(HalfInt(k - 1)), sub)


@dataclass(frozen=True)
class Su2Ops:
    """Ladder triple on the angular subspace."""

    space: AngularSpace
    plus: Operator
    minus: Operator
    z: Operator

    def casimir(self) -> Operator:
        return 0.5 * (self.plus @ self.minus + self.minus @ self.plus) + self.z @ self.z


def angular_momentum_ops(params: ShiftParams) -> Su2Ops:
    """J+ = H U, J- = U* H, J3 = (N1 - N2)/2, all restricted."""
    k = params.k
    ops = quon_operators(k)
    h = modulus_op(k)
    u = shift_op(params)
    plus = restrict_to_angular(h @ u, k)
    minus = restrict_to_angular(u.adjoint() @ h, k)
    z = restrict_to_angular((ops.number1 - ops.number2) * 0.5, k)
    return Su2Ops(space=AngularSpace(HalfInt(k - 1)), plus=plus, minus=minus, z=z)


def _expected_ladder(space: AngularSpace, sign: int) -> np.ndarray:
    j = float(space.j)
    ms = [float(m) for m in space.m_values()]
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    for i, m in enumerate(ms):
        target = i + sign
        if 0 <= target < space.dim:
            mat[target, i] = math.sqrt((j - sign * m) * (j + sign * m + 1))
    return mat


def verify_su2(
    params: ShiftParams,
    tol: ToleranceRule | None = None,
    *,
    commutation_samples: int = 3,
    seed: int = 0,
) -> VerificationReport:
    """Residuals for the polar construction on the angular subspace.

    Covers the literal shift action on every column family (interior
    steps, the two phased single-mode wraps, the phased double wrap),
    unitarity and monomial structure of the shift, Hermitecity
    of the modulus, the su(2) commutators and ladder matrix elements, the
    Casimir identity against H^2 + J3^2 - J3, cyclicity of the shift, and a
    seeded sample of family members whose shifts must not commute.
    """
    k = params.k
    if tol is None:
        tol = ToleranceRule.for_order(k)
    report = VerificationReport(suite="su2-polar", k=k, r=float(params.r))
    fock = FockSpace(k)
    u = shift_op(params)
    h = modulus_op(k)

    # literal action, all four column families: interior steps carry no
    # phase, wrapping a single mode costs half the wrap phase, wrapping
    # both costs the full one.
    interior = 0.0
    for n1 in range(k - 1):
        for n2 in range(1, k):
            col = u.mat[:, fock.index(n1, n2)].copy()
            col[fock.index(n1 + 1, n2 - 1)] -= 1.0
            interior = max(interior, float(np.max(np.abs(col))))
    report.add(Check.residual_check("interior_shift_action", interior, tol.abs_tol))

    half = params.half_wrap_phase
    mode1_wrap = 0.0
    for n2 in range(1, k):
        col = u.mat[:, fock.index(k - 1, n2)].copy()
        col[fock.index(0, n2 - 1)] -= half
        mode1_wrap = max(mode1_wrap, float(np.max(np.abs(col))))
    report.add(Check.residual_check("mode1_wrap_action", mode1_wrap, tol.abs_tol))

    mode2_wrap = 0.0
    for n1 in range(k - 1):
        col = u.mat[:, fock.index(n1, 0)].copy()
        col[fock.index(n1 + 1, k - 1)] -= half
        mode2_wrap = max(mode2_wrap, float(np.max(np.abs(col))))
    report.add(Check.residual_check("mode2_wrap_action", mode2_wrap, tol.abs_tol))

    wrap_col = u.mat[:, fock.index(k - 1, 0)].copy()
    wrap_col[fock.index(0, k - 1)] -= params.wrap_phase
    report.add(
        Check.residual_check("double_wrap_action", float(np.max(np.abs(wrap_col))), tol.abs_tol)
    )

    unit = (u.adjoint() @ u - Operator.identity(fock)).norm()
    report.add(Check.residual_check("shift_unitary", unit, tol.abs_tol))

    # each column must hold exactly one unit-modulus entry
    moduli = np.sort(np.abs(u.mat), axis=0)
    monomial = max(
        float(np.max(np.abs(moduli[-1, :] - 1.0))),
        float(np.max(moduli[-2, :])) if fock.dim > 1 else 0.0,
    )
    report.add(Check.residual_check("shift_monomial_columns", monomial, tol.abs_tol))

    report.add(Check.residual_check("modulus_hermitean", (h - h.adjoint()).norm(), tol.abs_tol))

    su2 = angular_momentum_ops(params)
    plus, minus, z = su2.plus, su2.minus, su2.z
    report.add(
        Check.residual_check(
            "commutator_z_plus", (commutator(z, plus) - plus).norm(), tol.abs_tol
        )
    )
    report.add(
        Check.residual_check(
            "commutator_z_minus", (commutator(z, minus) + minus).norm(), tol.abs_tol
        )
    )
    report.add(
        Check.residual_check(
            "commutator_plus_minus", (commutator(plus, minus) - 2.0 * z).norm(), tol.abs_tol
        )
    )

    space = su2.space
    report.add(
        Check.residual_check(
            "raising_matrix_elements",
            float(np.max(np.abs(plus.mat - _expected_ladder(space, +1)))),
            tol.abs_tol,
        )
    )
    report.add(
        Check.residual_check(
            "lowering_matrix_elements",
            float(np.max(np.abs(minus.mat - _expected_ladder(space, -1)))),
            tol.abs_tol,
        )
    )
    z_expected = np.diag([float(m) for m in space.m_values()]).astype(complex)
    report.add(
        Check.residual_check(
            "z_diagonal", float(np.max(np.abs(z.mat - z_expected))), tol.abs_tol
        )
    )

    h_ang = restrict_to_angular(h, k)
    casimir = su2.casimir()
    polar_form = h_ang @ h_ang + z @ z - z
    report.add(
        Check.residual_check("casimir_polar_identity", (casimir - polar_form).norm(), tol.abs_tol)
    )

    u_ang = restrict_to_angular(u, k)
    report.add(
        Check.residual_check("casimir_shift_commute", commutator(casimir, u_ang).norm(), tol.abs_tol)
    )

    cyclic = (u_ang.power(k) - params.wrap_phase * Operator.identity(space)).norm()
    report.add(Check.residual_check("shift_cyclicity", cyclic, tol.abs_tol))

    # distinct wrap phases must give non-commuting shifts
    rng = np.random.default_rng(seed)
    r0 = float(params.r)
    wrap0 = params.wrap_phase
    smallest = math.inf
    found = 0
    attempts = 0
    while found < commutation_samples and attempts < 100 * commutation_samples:
        attempts += 1
        s = r0 + float(rng.uniform(0.1, 1.9))
        other = ShiftParams(k, s)
        if abs(other.wrap_phase - wrap0) < 0.5:
            continue
        found += 1
        smallest = min(smallest, commutator(u, shift_op(other)).norm())
    if found == 0:
        smallest = 0.0
    report.add(Check.threshold_check("distinct_shift_noncommuting", smallest, tol.abs_tol))
    return report


def basis_transform_matrix(j, r) -> np.ndarray:
    """Columns are the shift eigenvectors: T[m_index, s] = q^(alpha_s m)/sqrt(2j+1)."""
    j = HalfInt.of(j)
    order = j.twice + 1
    scale = 1.0 / math.sqrt(order)
    mat = np.empty((order, order), dtype=complex)
    for col in range(order):
        for row, m in enumerate(halfint_range(-j, j)):
            mat[row, col] = alpha_phase(j, r, col, m) * scale
    return mat


def shift_eigenvalue(j, r, s: int) -> complex:
    """q^(-alpha_s) with q = exp(2*pi*i/(2j+1))."""
    return alpha_phase(j, r, s, HalfInt(2), sign=-1)


@dataclass(frozen=True)
class ShiftEigenbasis:
    """Joint eigenbasis of the Casimir and the cyclic shift at parameter r.

    alphas[s] = -j*r + s for s = 0..2j; column s of transform holds the
    eigenvector with shift eigenvalue q^(-alphas[s]).  The inverse change of
    basis is the conjugate transpose.
    """

    j: HalfInt
    r: float
    alphas: tuple[float, ...]
    eigenvalues: np.ndarray
    transform: np.ndarray

    def vector(self, s: int) -> np.ndarray:
        return self.transform[:, s]

    def to_dict(self) -> dict:
        return {
            "j": str(self.j),
            "r": self.r,
            "alphas": list(self.alphas),
            "eigenvalues": [complex_record(z) for z in self.eigenvalues],
            "transform": matrix_to_json_entries(self.transform),
        }


def shift_eigenbasis(j, r) -> ShiftEigenbasis:
    j = HalfInt.of(j)
    if j.twice == 0:
        raise UnsupportedLimitError("j = 0 carries no shift; the eigenbasis needs j >= 1/2")
    order = j.twice + 1
    transform = basis_transform_matrix(j, r)
    transform.setflags(write=False)
    eigenvalues = np.array([shift_eigenvalue(j, r, s) for s in range(order)])
    eigenvalues.setflags(write=False)
    alphas = tuple(alpha_value(j, r, s) for s in range(order))
    return ShiftEigenbasis(j=j, r=float(r), alphas=alphas, eigenvalues=eigenvalues, transform=transform)


def verify_shift_eigenbasis(j, r, tol: ToleranceRule | None = None) -> VerificationReport:
    """Check the analytic eigenbasis against the shift it is supposed to diagonalize."""
    j = HalfInt.of(j)
    basis = shift_eigenbasis(j, r)
    k = j.twice + 1
    if tol is None:
        tol = ToleranceRule.for_order(k)
    params = ShiftParams(k, float(r))
    u = restrict_to_angular(shift_op(params), k)
    report = VerificationReport(suite="shift-eigenbasis", k=k, r=float(r))

    residual = float(
        np.max(np.abs(u.mat @ basis.transform - basis.transform * basis.eigenvalues[None, :]))
    )
    report.add(Check.residual_check("eigenvector_residual", residual, tol.abs_tol))

    gram = basis.transform.conj().T @ basis.transform
    report.add(
        Check.residual_check(
            "transform_unitary", float(np.max(np.abs(gram - np.eye(k)))), tol.abs_tol
        )
    )

    sep = min(
        abs(basis.eigenvalues[a] - basis.eigenvalues[b])
        for a in range(k)
        for b in range(a + 1, k)
    )
    report.add(Check.threshold_check("eigenvalues_distinct", float(sep), tol.abs_tol))

    generic = np.linalg.eig(u.mat)[0]
    worst = max(float(np.min(np.abs(generic - lam))) for lam in basis.eigenvalues)
    report.add(Check.residual_check("generic_solver_agreement", worst, max(tol.abs_tol, 1e-9)))

    # the wrap phase must close the eigenvector ansatz: exp(i*phase) = exp(2*pi*i*j*r)
    closure = abs(params.wrap_phase - phase_from_turn((j.as_fraction * _as_fraction(r)) % 1))
    report.add(Check.residual_check("wrap_phase_consistency", float(closure), tol.abs_tol))
    return report


def clock_shift_monomial(params: ShiftParams, m1: int, m2: int) -> Operator:
    """q^(m1 m2) U^m1 V^m2 on the angular space, V the diagonal clock q^(N1-N2)."""
    if not isinstance(m1, numbers.Integral) or not isinstance(m2, numbers.Integral):
        raise InvalidArgumentError("monomial indices must be integers")
    m1, m2 = int(m1), int(m2)
    k = params.k
    u = restrict_to_angular(shift_op(params), k)
    shift_part = u.power(m1) if m1 >= 0 else u.adjoint().power(-m1)
    tj = k - 1
    clock_diag = [q_power(tm * m2, k) for tm in range(-tj, tj + 1, 2)]
    clock_part = Operator.diagonal(u.space, clock_diag)
    return q_power(m1 * m2, k) * (shift_part @ clock_part)


def verify_sine_algebra(
    params: ShiftParams, index_range, tol: ToleranceRule | None = None
) -> VerificationReport:
    """Commutators of clock-shift monomials against the sine structure constants:
    [T_m, T_n] = -2i sin((2*pi/k) (m1 n2 - m2 n1)) T_(m+n)."""
    k = params.k
    if tol is None:
        tol = ToleranceRule.for_order(k)
    indices = [int(i) for i in index_range]
    pairs = [(a, b) for a in indices for b in indices]
    cache: dict[tuple[int, int], Operator] = {}

    def monomial(a: int, b: int) -> Operator:
        key = (a, b)
        if key not in cache:
            cache[key] = clock_shift_monomial(params, a, b)
        return cache[key]

    worst_comm = 0.0
    worst_unitary = 0.0
    eye = None
    for am, bm in pairs:
        t_m = monomial(am, bm)
        if eye is None:
            eye = Operator.identity(t_m.space)
        worst_unitary = max(worst_unitary, (t_m.adjoint() @ t_m - eye).norm())
        for an, bn in pairs:
            t_n = monomial(an, bn)
            cross = am * bn - bm * an
            target = monomial(am + an, bm + bn)
            residual = (
                commutator(t_m, t_n) + (2j * math.sin(2 * math.pi * cross / k)) * target
            ).norm()
            worst_comm = max(worst_comm, residual)

    report = VerificationReport(suite="sine-algebra", k=k, r=float(params.r))
    report.add(Check.residual_check("monomial_unitary", worst_unitary, tol.abs_tol))
    report.add(Check.residual_check("sine_commutation", worst_comm, tol.abs_tol))
    return report
