import pathlib
from fractions import Fraction

from cqg.linalg import identity, matmul, permutation_matrix, slot_embed
from cqg.oracle import ExactPoint, numeric_r
from cqg.rmatrix import (
    build_braid,
    build_r,
    build_r_pm,
    c_minus,
    c_plus,
    check_braided_ybe,
    check_cqybe,
    residual_term_counts,
    s_ratio,
)
from cqg.scalar import ONE, Q, ZERO, Exponent, q_pow

PAPER = pathlib.Path(__file__).resolve().parents[1] / "paper.md"
LAM, MU = Exponent.colour("lambda"), Exponent.colour("mu")


def test_r_matrix_entries():
    R = build_r("lambda", "mu").matrix
    assert R[0, 0] == q_pow(Exponent(1) - (LAM - MU))
    assert R[1, 1] == q_pow(LAM + MU)
    assert R[2, 1] == Q - Q.invert()
    assert R[2, 2] == q_pow(-(LAM + MU))
    assert R[3, 3] == q_pow(Exponent(1) + (LAM - MU))
    assert sum(1 for e in R.entries if e) == 5


def test_r_matrix_matches_printed_entries():
    if not PAPER.exists():
        return
    text = PAPER.read_text()
    for printed in ("q^{1-(\\lambda-\\mu)}", "q^{\\lambda+\\mu}", "q-q^{-1}", "q^{-(\\lambda+\\mu)}",
                    "q^{1+(\\lambda-\\mu)}"):
        assert printed in text


def test_colourless_r_is_standard():
    R = build_r(0, 0).matrix
    assert [R[i, i] for i in range(4)] == [Q, ONE, ONE, Q]


def test_cqybe_residual_is_exact_zero():
    res = check_cqybe()
    assert res.shape == (8, 8)
    assert res.is_zero()
    assert residual_term_counts(res) == [[0] * 8 for _ in range(8)]


def test_braided_ybe_residual_is_exact_zero():
    assert check_braided_ybe().is_zero()


def test_ybe_detects_wrong_colour_assignment():
    # R12 with swapped colours no longer satisfies the equation
    r12 = slot_embed(build_r("mu", "lambda").matrix, "12")
    r13 = slot_embed(build_r("lambda", "nu").matrix, "13")
    r23 = slot_embed(build_r("mu", "nu").matrix, "23")
    assert not (matmul(matmul(r12, r13), r23) - matmul(matmul(r23, r13), r12)).is_zero()


def test_r_plus_minus():
    P = permutation_matrix(2)
    R = build_r("lambda", "mu").matrix
    assert build_r_pm("+", "lambda", "mu") == matmul(matmul(P, R), P).scale(c_plus())
    assert matmul(build_r_pm("-", "lambda", "mu"), R) == identity(4).scale(c_minus())
    assert s_ratio() == c_plus().invert() * c_minus()


def test_braid_is_pr():
    assert build_braid("lambda", "mu") == matmul(permutation_matrix(2), build_r("lambda", "mu").matrix)


def test_symbolic_r_specializes_to_numeric_oracle():
    pt = ExactPoint(Fraction(3, 2), {"lambda": Fraction(1, 2), "mu": Fraction(-3, 2)})
    R = build_r("lambda", "mu").matrix
    N = numeric_r(pt, Fraction(1, 2), Fraction(-3, 2))
    assert [[pt.value(R[i, j]) for j in range(4)] for i in range(4)] == N
    assert ZERO.specialize(pt.q) == 0
