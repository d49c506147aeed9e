"""Thermofield double on a truncated two-mode Fock space.

The physical mode ``a`` and the fictitious tilde mode ``a~`` act on the
product space with basis ``|n, m~>``, flattened as ``n * (n_max + 1) + m``.
The squeezing unitary is

    T(theta) = exp[-theta (a a~ - a^dag a~^dag)],

and conjugation is taken as ``T B T^dag``, which gives

    a_T = a cosh(theta) - a~^dag sinh(theta).

Truncation corrupts the top occupation level, so operator identities are
only checked on the "safe block" ``n + m <= n_max / 2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg  # noqa: F401  (sp.linalg.norm)

from .errors import DomainError, TruncationError
from .expm import expm, expm_action

__all__ = [
    "TwoModeFock",
    "ThermofieldState",
    "BogoliubovResult",
    "ThermalExpectations",
    "build_fock",
    "theta_from_alpha",
    "alpha_from_theta",
    "generator",
    "squeeze_unitary",
    "thermofield_vacuum",
    "bogoliubov_conjugate",
    "bch_conjugate",
    "thermal_expectations",
    "TRUNCATION_TOL",
    "DENSE_N_MAX",
]

TRUNCATION_TOL = 1e-12
#: Largest cutoff for which dense operator conjugation is attempted.
DENSE_N_MAX = 60
_THETA_MAX = math.atanh(1.0 - 1e-6)


def _ladder(n_max):
    return sp.diags(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1, format="csr")


@dataclass(frozen=True, eq=False)
class TwoModeFock:
    n_max: int

    @property
    def levels(self):
        return self.n_max + 1

    @property
    def dim(self):
        return self.levels**2

    @cached_property
    def _eye(self):
        return sp.identity(self.levels, format="csr")

    @cached_property
    def a(self):
        return sp.kron(_ladder(self.n_max), self._eye, format="csr")

    @cached_property
    def adag(self):
        return self.a.T.tocsr()

    @cached_property
    def at(self):
        """Tilde-mode annihilator."""
        return sp.kron(self._eye, _ladder(self.n_max), format="csr")

    @cached_property
    def atdag(self):
        return self.at.T.tocsr()

    def index(self, n, m):
        return n * self.levels + m

    def vacuum(self):
        v = np.zeros(self.dim)
        v[0] = 1.0
        return v

    def safe_block(self):
        """Flat indices with n + m <= n_max // 2."""
        half = self.n_max // 2
        return np.array([self.index(n, m) for n in range(half + 1)
                         for m in range(half + 1 - n)])


def build_fock(n_max: int = 40) -> TwoModeFock:
    if not (isinstance(n_max, (int, np.integer)) and 2 <= n_max <= 200):
        raise DomainError(f"n_max must be an integer in [2, 200], got {n_max!r}")
    return TwoModeFock(int(n_max))


def theta_from_alpha(alpha) -> float:
    """artanh(e^{-alpha}), so that sinh^2(theta) = 1/(e^{2 alpha} - 1)."""
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha!r}")
    return math.atanh(math.exp(-alpha))


def alpha_from_theta(theta) -> float:
    if theta == 0:
        return math.inf
    return -math.log(math.tanh(abs(theta)))


def _required_n_max(tanh_theta):
    if tanh_theta == 0:
        return 2
    return max(2, math.ceil(math.log(TRUNCATION_TOL) / math.log(tanh_theta)) + 1)


def _guard(fock, theta):
    if not abs(theta) <= _THETA_MAX:
        raise DomainError(f"|theta| must be <= artanh(1 - 1e-6), got {theta!r}")
    t = math.tanh(abs(theta))
    if not t**fock.n_max < TRUNCATION_TOL:
        need = _required_n_max(t)
        raise TruncationError(
            f"n_max = {fock.n_max} too small for theta = {theta:.6g}: "
            f"tanh(theta)^n_max = {t**fock.n_max:.3e}; need n_max >= {need}", need)


def generator(fock: TwoModeFock, theta) -> sp.csr_matrix:
    """-theta (a a~ - a^dag a~^dag), real and antisymmetric."""
    return (-theta * (fock.a @ fock.at - fock.adag @ fock.atdag)).tocsr()


def squeeze_unitary(fock: TwoModeFock, theta) -> np.ndarray:
    """Dense T(theta); only for n_max <= DENSE_N_MAX."""
    if fock.n_max > DENSE_N_MAX:
        raise DomainError(f"dense T(theta) limited to n_max <= {DENSE_N_MAX}")
    return expm(generator(fock, theta))


@dataclass(frozen=True)
class ThermofieldState:
    theta: float
    alpha: float
    state_vector: np.ndarray

    @property
    def norm(self):
        return float(np.linalg.norm(self.state_vector))


def thermofield_vacuum(fock: TwoModeFock, theta) -> ThermofieldState:
    """T(theta)|0, 0~>, computed as a matrix-exponential action."""
    _guard(fock, theta)
    psi = expm_action(generator(fock, theta), fock.vacuum())
    return ThermofieldState(theta=float(theta), alpha=alpha_from_theta(theta),
                            state_vector=psi)


def _closed_form(fock, theta):
    ch, sh = math.cosh(theta), math.sinh(theta)
    a_t = (ch * fock.a - sh * fock.atdag).tocsr()
    adag_t = (ch * fock.adag - sh * fock.at).tocsr()
    return a_t, adag_t


def _block_distance(fock, x, y):
    idx = fock.safe_block()
    x = x.toarray() if sp.issparse(x) else np.asarray(x)
    y = y.toarray() if sp.issparse(y) else np.asarray(y)
    return float(np.linalg.norm((x - y)[np.ix_(idx, idx)]))


@dataclass(frozen=True)
class BogoliubovResult:
    """Closed-form a_T, a_T^dag plus the safe-block Frobenius distances to
    the operators obtained by explicit conjugation ``T B T^dag``."""

    a_T: sp.csr_matrix
    adag_T: sp.csr_matrix
    distance_a: float
    distance_adag: float


def bogoliubov_conjugate(fock: TwoModeFock, theta) -> BogoliubovResult:
    _guard(fock, theta)
    unitary = squeeze_unitary(fock, theta)
    conj_a = unitary @ (fock.a @ unitary.T)
    conj_adag = unitary @ (fock.adag @ unitary.T)
    a_t, adag_t = _closed_form(fock, theta)
    return BogoliubovResult(a_T=a_t, adag_T=adag_t,
                            distance_a=_block_distance(fock, conj_a, a_t),
                            distance_adag=_block_distance(fock, conj_adag, adag_t))


def bch_conjugate(fock: TwoModeFock, theta, order=20, operator=None):
    """Sum e^G B e^{-G} = B + [G, B] + [G, [G, B]]/2! + ... to ``order``.

    Returns ``(operator, residual)`` where ``residual`` is the safe-block
    Frobenius norm of the last term added, and ``B`` defaults to ``a``.
    Outside the safe block the truncated nested commutators grow without
    bound and carry no meaning.
    """
    if order < 1:
        raise DomainError(f"order must be >= 1, got {order!r}")
    _guard(fock, theta)
    gen = generator(fock, theta)
    term = (fock.a if operator is None else operator).tocsr()
    total = term.copy()
    for k in range(1, order + 1):
        term = ((gen @ term - term @ gen) / k).tocsr()
        total = total + term
    idx = fock.safe_block()
    return total.tocsr(), float(sp.linalg.norm(term[idx][:, idx]))


@dataclass(frozen=True)
class ThermalExpectations:
    """Vacuum expectations of the thermofield operators.

    ``number`` is <a_T^dag a_T>; ``commutator`` is <[a_T, a_T^dag]>, which
    is 1 for any unitary conjugation; ``symmetrized`` is
    <a_T a_T^dag + a_T^dag a_T> = cosh^2 + sinh^2 = coth(alpha).
    """

    alpha: float
    theta: float
    number: float
    commutator: float
    symmetrized: float

    @property
    def closed_number(self):
        return 1.0 / math.expm1(2.0 * self.alpha)

    @property
    def closed_commutator(self):
        return 1.0 / math.tanh(self.alpha)


def thermal_expectations(fock: TwoModeFock, alpha, method="state") -> ThermalExpectations:
    """Number and (anti)commutator expectations in |0, 0~> at theta(alpha).

    ``method="state"`` propagates T^dag |0, 0~> and works for any n_max;
    ``method="operator"`` builds a_T = T a T^dag densely.
    """
    theta = theta_from_alpha(alpha)
    if not math.exp(-alpha * fock.n_max) < TRUNCATION_TOL:
        need = _required_n_max(math.exp(-alpha))
        raise TruncationError(
            f"n_max = {fock.n_max} too small for alpha = {alpha:.6g}; need n_max >= {need}", need)
    _guard(fock, theta)
    if method == "state":
        # <0|T B T^dag|0> = <psi|B|psi> with psi = T^dag|0> = T(-theta)|0>.
        psi = expm_action(generator(fock, -theta), fock.vacuum())
        down = fock.a @ psi
        up = fock.adag @ psi
        n_down = float(down @ down)
        n_up = float(up @ up)
        number, commutator, symmetrized = n_down, n_up - n_down, n_up + n_down
    elif method == "operator":
        unitary = squeeze_unitary(fock, theta)
        a_t = unitary @ (fock.a @ unitary.T)
        adag_t = unitary @ (fock.adag @ unitary.T)
        vac = fock.vacuum()
        lowered = a_t @ vac
        raised = adag_t @ vac
        number = float(lowered @ lowered)
        n_up = float(raised @ raised)
        commutator = n_up - number
        symmetrized = n_up + number
    else:
        raise DomainError(f"unknown method {method!r}")
    return ThermalExpectations(alpha=float(alpha), theta=theta, number=number,
                               commutator=commutator, symmetrized=symmetrized)
