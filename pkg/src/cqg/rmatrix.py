"""The coloured R-matrix, its braid form and the Yang-Baxter residuals."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import RingMatrix, matmul, permutation_matrix, slot_embed, triangular_inverse
from .scalar import Q, ZERO, Exponent, Scalar, q_pow

__all__ = [
    "ColouredR",
    "build_r",
    "build_braid",
    "build_r_pm",
    "check_cqybe",
    "check_braided_ybe",
    "c_plus",
    "c_minus",
    "s_ratio",
]

QMQ = Q - Q.invert()  # q - q^-1


def _colour(x) -> Exponent:
    if isinstance(x, str):
        # bare identifiers are colour symbols, anything else an affine expression
        return Exponent.colour(x) if x.isidentifier() else Exponent.coerce(x)
    return Exponent.coerce(x)


def c_plus() -> Scalar:
    return Scalar.monomial(0, 1, {"cp": 1})


def c_minus() -> Scalar:
    return Scalar.monomial(0, 1, {"cm": 1})


def s_ratio() -> Scalar:
    """``s = (c+)^-1 c-``."""
    return Scalar.monomial(0, 1, {"cp": -1, "cm": 1})


@dataclass(frozen=True)
class ColouredR:
    matrix: RingMatrix
    colours: tuple[Exponent, Exponent]

    def __getitem__(self, ij):
        return self.matrix[ij]


def build_r(first, second) -> ColouredR:
    """R(lambda, mu): diagonal ``q^(1-(l-m)), q^(l+m), q^-(l+m), q^(1+(l-m))`` plus ``q - q^-1`` at (3,2)."""
    lam, mu = _colour(first), _colour(second)
    one = Exponent(1)
    diff = lam - mu
    tot = lam + mu
    z = ZERO
    rows = [
        [q_pow(one - diff), z, z, z],
        [z, q_pow(tot), z, z],
        [z, QMQ, q_pow(-tot), z],
        [z, z, z, q_pow(one + diff)],
    ]
    return ColouredR(RingMatrix.from_rows(rows), (lam, mu))


def build_braid(first, second) -> RingMatrix:
    """Coloured braid matrix ``P R(first, second)``."""
    return matmul(permutation_matrix(2), build_r(first, second).matrix)


def build_r_pm(sign: str, first, second) -> RingMatrix:
    """``R+ = c+ P R P`` and ``R- = c- R^-1``."""
    R = build_r(first, second).matrix
    if sign == "+":
        P = permutation_matrix(2)
        return matmul(matmul(P, R), P).scale(c_plus())
    if sign == "-":
        return triangular_inverse(R).scale(c_minus())
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def check_cqybe(lam="lambda", mu="mu", nu="nu") -> RingMatrix:
    """Residual ``R12(l,m) R13(l,n) R23(m,n) - R23(m,n) R13(l,n) R12(l,m)``."""
    r12 = slot_embed(build_r(lam, mu).matrix, "12")
    r13 = slot_embed(build_r(lam, nu).matrix, "13")
    r23 = slot_embed(build_r(mu, nu).matrix, "23")
    return matmul(matmul(r12, r13), r23) - matmul(matmul(r23, r13), r12)


def check_braided_ybe(lam="lambda", mu="mu", nu="nu") -> RingMatrix:
    """Residual ``^R23(l,m) ^R12(l,n) ^R23(m,n) - ^R12(m,n) ^R23(l,n) ^R12(l,m)``."""
    def b(x, y, slots):
        return slot_embed(build_braid(x, y), slots)

    lhs = matmul(matmul(b(lam, mu, "23"), b(lam, nu, "12")), b(mu, nu, "23"))
    rhs = matmul(matmul(b(mu, nu, "12"), b(lam, nu, "23")), b(lam, mu, "12"))
    return lhs - rhs


def residual_term_counts(M: RingMatrix) -> list[list[int]]:
    return [[len(M[i, j].terms) for j in range(M.cols)] for i in range(M.rows)]

