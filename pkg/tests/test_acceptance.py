"""Acceptance criteria, one test per criterion; every check is exact."""

import random
from fractions import Fraction

import pytest

from dutchgames.game_bets import (
    DutchBookCertificate,
    GameMatrix,
    PositiveMeanCertificate,
    ZeroMeanUndecided,
    classify,
    verify_certificate,
)
from dutchgames.games import (
    ONE,
    UP,
    ZERO,
    Status,
    add,
    canonical,
    eq,
    game_to_number,
    ge,
    gt,
    is_infinitesimal,
    le,
    lt,
    make_game,
    neg,
    nmul,
    number_to_game,
    parse_game,
    status,
    status_bruteforce,
    sub,
)
from dutchgames.matrix_games import (
    Bet,
    Coherent,
    DutchBook,
    IncoherentBets,
    PayoffMatrix,
    Solution,
    analyze_coherence,
    lower_prevision,
    minimax_gap,
    solve_zero_sum,
    verify_coherence,
    verify_solution,
)
from dutchgames.surreal import W, rf, rf_is_infinitesimal, rf_sign
from dutchgames.thermography import mean, mean_bound_check

from gen import GAME_SEED, games, matrix_corpus, qw_matrices, rational_matrices

EDGE = PayoffMatrix.from_rows([["1+1/w", "-1-2/w"], ["-1", "1+1/w"]])
EDGE_OMEGA = PayoffMatrix.from_rows([["w+1", "-w-2"], ["-w", "w+1"]])


def test_criterion_01_day_one_statuses():
    assert status(ZERO) is Status.ZERO
    assert status(make_game([], [ZERO])) is Status.NEGATIVE
    assert status(make_game([ZERO], [])) is Status.POSITIVE
    assert status(make_game([ZERO], [ZERO])) is Status.FUZZY


def test_criterion_02_number_identification():
    assert eq(nmul(2, make_game([ZERO], [ONE])), ONE)
    for m in range(1, 7):
        tiny = number_to_game(Fraction(1, 2**m))
        assert eq(nmul(2, make_game([ZERO], [tiny])), tiny)
    rng = random.Random(GAME_SEED)
    for _ in range(100):
        x = Fraction(rng.randint(-(2**10), 2**10), 2 ** rng.randint(0, 8))
        assert game_to_number(number_to_game(x)) == x


def test_criterion_03_zero_mean_positive_game():
    G = parse_game("{1 | {0 | -2}}")
    assert status(G) is Status.POSITIVE
    assert mean(G) == 0
    two = number_to_game(2)
    for n in range(1, 6):
        nG = nmul(n, G)
        assert mean_bound_check(G, n, 2)
        # n copies never beat 1; strictly they are confused with 1, and positive
        assert not gt(nG, ONE)
        assert gt(nG, ZERO) and lt(nG, two)


def _equalizer_2x2(M):
    (a, b), (c, d) = M.entries
    p1 = (d - b) / (a - b - c + d)
    return p1, p1 * a + (1 - p1) * b


def test_criterion_04_infinitesimal_edge_matrix():
    S = solve_zero_sum(EDGE)
    assert S.row_strategy.weights == (rf("(2*w+3)/(4*w+4)"), rf("(2*w+1)/(4*w+4)"))
    p1, value = _equalizer_2x2(EDGE)
    assert S.row_strategy.weights[0] == p1
    assert S.value == value == 1 / (4 * W * (W + 1))
    assert rf_sign(S.value) == 1
    assert rf_is_infinitesimal(S.value)


def test_criterion_05_scaled_by_omega():
    S1 = solve_zero_sum(EDGE)
    assert EDGE_OMEGA == EDGE.scaled(W)
    assert verify_solution(EDGE_OMEGA, Solution(W * S1.value, S1.row_strategy, S1.column_strategy))
    S2 = solve_zero_sum(EDGE_OMEGA)
    assert S2.value == W * S1.value
    assert verify_solution(EDGE_OMEGA, S2)


def test_criterion_06_coherence_dichotomy():
    corpus = rational_matrices(100) + qw_matrices(20)
    assert len(corpus) == 120
    for M in corpus:
        S = solve_zero_sum(M)
        R = analyze_coherence(M, S)
        assert verify_coherence(M, R)
        candidates = [Coherent(S.row_strategy), DutchBook(S.column_strategy)]
        assert sum(verify_coherence(M, c) for c in candidates) == 1
        strictly_coherent = all(
            sum((p * row[a] for a, p in enumerate(S.row_strategy.weights)), rf(0)) > 0
            for row in M.entries
        )
        strictly_dutch = verify_coherence(M, DutchBook(S.column_strategy))
        assert not (strictly_coherent and strictly_dutch)


def test_criterion_07_mean_value_properties():
    sample = games(200, seed=GAME_SEED)
    for G, H in zip(sample, sample[1:] + sample[:1]):
        assert mean(add(G, H)) == mean(G) + mean(H)
    for G in sample:
        for n in range(1, 5):
            assert mean(nmul(n, G)) == n * mean(G)
        if ge(G, ZERO):
            assert mean(G) >= 0
    assert mean(ONE) == 1


def test_criterion_08_status_oracle():
    for G in games(500, seed=GAME_SEED + 1):
        assert status(G) is status_bruteforce(G)


def test_criterion_09_trichotomy():
    zm = GameMatrix.from_rows([["{1 | {0 | -2}}"]])
    cert = classify(zm)
    assert isinstance(cert, ZeroMeanUndecided)
    assert status(zm.entries[0][0]) is Status.POSITIVE

    hot = GameMatrix.from_rows([["{0 | -2}"]])
    cert = classify(hot)
    assert isinstance(cert, DutchBookCertificate) and verify_certificate(hot, cert)
    assert cert.coefficients == (2,)
    two_copies = nmul(2, hot.entries[0][0])
    assert status(two_copies) is Status.NEGATIVE
    assert status_bruteforce(add(hot.entries[0][0], hot.entries[0][0])) is Status.NEGATIVE

    plus = GameMatrix.from_rows([["1", "1"], ["1", "1"]])
    minus = GameMatrix.from_rows([["-1", "-1"], ["-1", "-1"]])
    assert isinstance(classify(plus), PositiveMeanCertificate)
    assert isinstance(classify(minus), DutchBookCertificate)


def test_criterion_10_infinitesimals():
    assert gt(UP, ZERO)
    assert is_infinitesimal(UP)
    total = add(ONE, sub(UP, ONE))
    assert is_infinitesimal(total)
    assert eq(total, UP) and canonical(total) is UP
    assert rf_is_infinitesimal(1 / W)


def test_criterion_11_lower_prevision():
    assert lower_prevision([Bet(("a1",), 1, -1)], ["a1"], ["a1", "a2"]) == Fraction(1, 2)
    # accepting the bet means p - (1 - p) >= 0; the smallest such p on a fine grid
    grid = [Fraction(k, 1024) for k in range(1025)]
    assert min(p for p in grid if p * 1 + (1 - p) * -1 >= 0) == Fraction(1, 2)
    bets = [Bet(("a1",), 1, -3), Bet(("a2",), 1, -1)]
    with pytest.raises(IncoherentBets):
        lower_prevision(bets, ["a1"], ["a1", "a2"])


def test_criterion_12_minimax_inequality():
    for M in matrix_corpus():
        lo, hi = minimax_gap(M)
        value = solve_zero_sum(M).value
        assert lo <= value <= hi
