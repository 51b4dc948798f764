import random
from fractions import Fraction

import pytest

from dutchgames.game_bets import (
    DutchBookCertificate,
    GameMatrix,
    MultiplierBudgetExceeded,
    PositiveMeanCertificate,
    ZeroMeanUndecided,
    _dutch_statuses,
    _positive_statuses,
    classify,
    find_dutch_coefficients,
    find_positive_multiplier,
    mean_matrix,
    verify_certificate,
)
from dutchgames.games import Status, add, canonical, number_to_game, parse_game, random_game, status
from dutchgames.matrix_games import Coherent, PayoffMatrix, SchemaError, analyze_coherence, solve_zero_sum

from gen import GAME_SEED


def gm(*rows):
    return GameMatrix.from_rows(rows)


class TestExamples:
    def test_zero_mean_positive_entry(self):
        M = gm(["{1 | {0 | -2}}"])
        assert status(M.entries[0][0]) is Status.POSITIVE
        cert = classify(M)
        assert isinstance(cert, ZeroMeanUndecided)
        assert cert.probabilities == (1,)
        assert verify_certificate(M, cert)

    def test_hot_dutch_book(self):
        M = gm(["{0 | -2}"])
        cert = classify(M)
        assert isinstance(cert, DutchBookCertificate)
        assert cert.coefficients == (2,)
        assert cert.verification == (Status.NEGATIVE,)
        assert cert.doublings == 1
        # one copy alone is confused with zero, so a single bookmaker is not enough
        assert status(parse_game("{0 | -2}")) is Status.FUZZY
        assert status(parse_game("mul(2, {0 | -2})")) is Status.NEGATIVE

    def test_all_plus_one(self):
        cert = classify(gm(["1", "1"], ["1", "1"]))
        assert isinstance(cert, PositiveMeanCertificate)
        assert cert.n == sum(cert.counts) and cert.n >= 1
        assert all(s is Status.POSITIVE for s in cert.verification)

    def test_all_minus_one(self):
        cert = classify(gm(["-1", "-1"], ["-1", "-1"]))
        assert isinstance(cert, DutchBookCertificate)
        assert all(s is Status.NEGATIVE for s in cert.verification)

    def test_star_diagonal(self):
        M = gm(["1", "*"], ["*", "1"])
        cert = classify(M)
        assert isinstance(cert, PositiveMeanCertificate)
        assert (cert.n, cert.counts) == (2, (1, 1))

    def test_mean_matrix(self):
        M = gm(["{10 | 2}", "*"], ["^", "{1 | {0 | -2}}"])
        assert mean_matrix(M) == [[6, 0], [0, 0]]

    def test_mean_matrix_value_zero_for_confused_entries(self):
        cert = classify(gm(["*", "^"], ["v", "*"]))
        assert isinstance(cert, ZeroMeanUndecided)


class TestSearch:
    def test_find_dutch_rejects_bad_weights(self):
        with pytest.raises(ValueError):
            find_dutch_coefficients(gm(["1"]), [1])
        with pytest.raises(ValueError):
            find_dutch_coefficients(gm(["-1"], ["-1"]), [1])

    def test_find_positive_rejects_bad_weights(self):
        with pytest.raises(ValueError):
            find_positive_multiplier(gm(["1", "1"]), [Fraction(1, 2), Fraction(1, 3)])
        with pytest.raises(ValueError):
            find_positive_multiplier(gm(["-1"]), [1])

    def test_budget(self):
        with pytest.raises(MultiplierBudgetExceeded):
            find_dutch_coefficients(gm(["{0 | -2}"]), [1], budget=1)

    def test_rational_weights_are_scaled(self):
        M = gm(["-1", "1"], ["1", "-1"], ["-1", "-1"])
        cert = find_dutch_coefficients(M, [0, 0, 1])
        assert cert.coefficients == (0, 0, 1)
        cert = find_positive_multiplier(gm(["2", "-1"]), [Fraction(2, 3), Fraction(1, 3)])
        assert cert.counts == (2, 1) and cert.n == 3


class TestVerification:
    def test_tampered_dutch_book(self):
        M = gm(["{0 | -2}"])
        assert not verify_certificate(M, DutchBookCertificate((1,), (Status.NEGATIVE,)))
        assert not verify_certificate(M, DutchBookCertificate((0,), ()))

    def test_tampered_positive(self):
        M = gm(["1", "*"], ["*", "1"])
        assert not verify_certificate(M, PositiveMeanCertificate(1, (1, 0), ()))
        assert not verify_certificate(M, PositiveMeanCertificate(3, (1, 1), ()))

    def test_bad_zero_mean_claim(self):
        assert not verify_certificate(gm(["1"]), ZeroMeanUndecided((1,)))


class TestSchema:
    def test_round_trip(self):
        M = gm(["{1 | {0 | -2}}", "^"], ["-3/2", "*"])
        again = GameMatrix.from_dict(M.to_dict())
        assert all(
            canonical(x) is canonical(y) for r1, r2 in zip(M.entries, again.entries) for x, y in zip(r1, r2)
        )

    def test_non_string_entry(self):
        doc = {"outcomes": ["a1"], "bookmakers": ["b1"], "entries": [[1]]}
        with pytest.raises(SchemaError):
            GameMatrix.from_dict(doc)

    def test_to_dict_tags(self):
        d = classify(gm(["{0 | -2}"])).to_dict()
        assert d == {
            "kind": "DutchBook",
            "coefficients": ["2"],
            "verification": ["Negative"],
            "policy": "mean-LP sign",
        }


def _random_number_matrix(rng):
    rows = [[Fraction(rng.randint(-8, 8), 2 ** rng.randint(0, 2)) for _ in range(2)] for _ in range(2)]
    return rows


def test_agrees_with_numeric_coherence_on_numbers():
    rng = random.Random(11)
    seen = set()
    for _ in range(40):
        rows = _random_number_matrix(rng)
        G = GameMatrix.from_rows([[number_to_game(x) for x in r] for r in rows])
        P = PayoffMatrix.from_rows(rows)
        value = solve_zero_sum(P).value
        cert = classify(G)
        assert verify_certificate(G, cert)
        if value == 0:
            assert isinstance(cert, ZeroMeanUndecided)
        elif isinstance(analyze_coherence(P), Coherent):
            assert isinstance(cert, PositiveMeanCertificate)
        else:
            assert isinstance(cert, DutchBookCertificate)
        seen.add(cert.kind)
    assert seen == {"DutchBook", "PositiveMean", "ZeroMeanUndecided"}


def _game_corpus(count, seed):
    rng = random.Random(seed)
    return [
        GameMatrix.from_rows(
            [
                [canonical(add(random_game(rng, 2, 2), number_to_game(rng.randint(-1, 1)))) for _ in range(2)]
                for _ in range(2)
            ]
        )
        for _ in range(count)
    ]


GAME_MATRICES = _game_corpus(40, GAME_SEED)


def test_corpus_terminates_and_verifies():
    for M in GAME_MATRICES:
        cert = classify(M)
        assert verify_certificate(M, cert)


def test_multiplier_is_minimal_up_to_two():
    for M in GAME_MATRICES + [gm(["{0 | -2}"]), gm(["{0 | -4}", "-1"])]:
        cert = classify(M)
        if getattr(cert, "doublings", 0) == 0:
            continue
        if isinstance(cert, DutchBookCertificate):
            half = tuple(n // 2 for n in cert.coefficients)
            assert not all(s is Status.NEGATIVE for s in _dutch_statuses(M, half))
        else:
            half = tuple(c // 2 for c in cert.counts)
            assert not all(s is Status.POSITIVE for s in _positive_statuses(M, half))


def test_monotonicity():
    rng = random.Random(GAME_SEED + 1)
    bumps = [parse_game(s) for s in ("^", "1", "1/2", "{1 | 0}", "0")]
    for M in GAME_MATRICES:
        before = classify(M)
        if not isinstance(before, PositiveMeanCertificate):
            continue
        rows = [list(r) for r in M.entries]
        b, a = rng.randrange(2), rng.randrange(2)
        bump = rng.choice(bumps)
        if status(bump) not in (Status.POSITIVE, Status.ZERO):
            continue
        rows[b][a] = canonical(add(rows[b][a], bump))
        after = classify(GameMatrix.from_rows(rows))
        assert not isinstance(after, DutchBookCertificate)
