from fractions import Fraction

import expected_tables as tables
from qhpp import exact, screening
from qhpp.configuration import Configuration, Outcome

F = Fraction


def _key(tokens):
    return Configuration.from_tokens(tokens).key()


def _keyset(token_lines):
    return {_key(line) for line in token_lines}


def test_index1_candidates():
    got = {c.key() for c in screening.enumerate_candidates(1)}
    assert got == _keyset(tables.INDEX1_CANDIDATES)
    assert len(screening.enumerate_candidates(1)) == 10


def test_index2_candidates():
    got = {c.key() for c in screening.enumerate_candidates(2)}
    assert got == _keyset(tables.INDEX2_CANDIDATES)
    assert len(screening.enumerate_candidates(2)) == 28


def test_index3_case_counts():
    counts = {case: len(screening.enumerate_index3_case(case)) for case in range(1, 7)}
    assert counts == {1: 13, 2: 19, 3: 33, 4: 58, 5: 4, 6: 4}
    assert len(screening.enumerate_candidates(3)) == 131


def _assert_case_table(case, expected):
    configs = screening.enumerate_index3_case(case)
    got = {c.key(): exact.factor_string(int(c.D)) for c in configs}
    want = {_key(tokens): d for tokens, d in expected.items()}
    assert got == want


def test_index3_case_tables_match_frozen_values():
    _assert_case_table(1, tables.INDEX3_CASE1)
    _assert_case_table(2, tables.INDEX3_CASE2)
    _assert_case_table(3, tables.INDEX3_CASE3)
    _assert_case_table(4, tables.INDEX3_CASE4)
    _assert_case_table(5, tables.INDEX3_CASE5)
    _assert_case_table(6, tables.INDEX3_CASE6)


def test_index2_eliminated_table_matches_frozen_values():
    got = {}
    for config in screening.enumerate_candidates(2):
        verdict = screening.arithmetic_filter(config)
        if verdict.obstructed:
            got[config.key()] = verdict.evidence["factorization"]
    want = {_key(tokens): d for tokens, d in tables.INDEX2_ELIMINATED.items()}
    assert got == want
    assert len(got) == 18


def test_k2_formula_specializations():
    # Gorenstein configurations: K^2 = 9 - L; one index-two singularity
    # contributes an extra +1, giving K^2 = 10 - L.
    for config in screening.enumerate_candidates(1):
        assert config.K2 == 9 - config.L
    for config in screening.enumerate_candidates(2):
        assert config.K2 == 10 - config.L
        assert config.index == 2
    for config in screening.enumerate_candidates(3):
        assert config.index == 3
        assert config.K2 > 0
        assert config.D == config.K2 * config.h1_product


def test_derived_invariants_examples():
    c = Configuration.from_tokens("K2")
    assert (c.L, c.K2, c.D) == (2, F(8), F(64))
    assert c.e_orb == F(17, 8)
    c = Configuration.from_tokens("A1(1) E8")
    assert (c.L, c.K2, c.D) == (9, F(1, 3), F(1))
    c = Configuration.from_tokens("A6(1,1)")
    assert c.D == 169
    c = Configuration.from_tokens("D5(2)")
    assert c.e_orb is None
    assert c.D == 64


def test_e_orb_nonnegative_on_all_candidates():
    for index in (1, 2, 3):
        for config in screening.enumerate_candidates(index):
            e = config.e_orb
            if e is not None:
                assert e >= 0, config.name


def test_arithmetic_filter_examples():
    v = screening.arithmetic_filter(Configuration.from_tokens("K6"))
    assert v.outcome is Outcome.OBSTRUCTED
    assert v.evidence["factorization"] == "2⁵·3"
    v = screening.arithmetic_filter(Configuration.from_tokens("A6(1,1)"))
    assert v.outcome is Outcome.PASS
    assert v.evidence["factorization"] == "13²"
    v = screening.arithmetic_filter(Configuration.from_tokens("A1(1) E8"))
    assert v.outcome is Outcome.PASS
    assert v.evidence["D"] == "1"


def test_bmy_filter():
    k2 = Configuration.from_tokens("K2")
    v = screening.bmy_filter(k2, anti_ample_impossible=True)
    assert v.outcome is Outcome.OBSTRUCTED
    assert Fraction(v.evidence["three_e_orb"]) == F(51, 8)
    k5 = Configuration.from_tokens("K5")
    v = screening.bmy_filter(k5, anti_ample_impossible=False)
    assert v.outcome is Outcome.PASS
    # K1 A4 violates the inequality but an anti-ample canonical class is
    # allowed for it, so it passes overall.
    k1a4 = Configuration.from_tokens("K1 A4")
    assert k1a4.K2 > 3 * k1a4.e_orb
    v = screening.bmy_filter(k1a4, anti_ample_impossible=False)
    assert v.outcome is Outcome.PASS
    v = screening.bmy_filter(k1a4, anti_ample_impossible=None)
    assert v.outcome is Outcome.NOT_APPLICABLE


def test_bmy_eliminates_only_k2_among_square_d_candidates():
    report = screening.classify(2)
    for r in report.candidates:
        if not r.verdict("arithmetic").obstructed:
            expect = r.config.key() == _key("K2")
            assert r.verdict("bmy").obstructed == expect, r.config.name


def test_cyclic_h1_filter():
    v = screening.cyclic_h1_filter(Configuration.from_tokens("D8"))
    assert v.outcome is Outcome.OBSTRUCTED
    assert v.evidence["non_cyclic"] == ["D8"]
    v = screening.cyclic_h1_filter(Configuration.from_tokens("A2(2,2) A4"))
    assert v.outcome is Outcome.OBSTRUCTED
    assert v.evidence["gcd"] == 5
    v = screening.cyclic_h1_filter(Configuration.from_tokens("K5 A2"))
    assert v.outcome is Outcome.PASS


def test_classify_index1():
    report = screening.classify(1)
    got = {r.config.key() for r in report.survivors}
    assert got == _keyset(tables.INDEX1_SURVIVORS)
    assert report.cross_checks["every_realizable_type_survives"]
    assert report.unmarked_survivors == ()
    # D8 falls to non-cyclic homology, A8 and A7 to the diagonalization test.
    by_key = {r.config.key(): r for r in report.candidates}
    assert by_key[_key("D8")].verdict("cyclic_h1").obstructed
    assert by_key[_key("A8")].verdict("donaldson").obstructed
    assert by_key[_key("A7")].verdict("donaldson").obstructed


def test_classify_index2():
    report = screening.classify(2)
    got = {r.config.key() for r in report.survivors}
    assert got == _keyset(tables.INDEX2_SURVIVORS)
    assert report.cross_checks["every_realizable_type_survives"]
    assert report.unmarked_survivors == ()
    by_key = {r.config.key(): r for r in report.candidates}
    assert by_key[_key("K9")].verdict("donaldson").obstructed
    assert by_key[_key("K8")].verdict("donaldson").obstructed
    assert by_key[_key("K1 A8")].verdict("donaldson").obstructed
    assert by_key[_key("K2")].verdict("bmy").obstructed
    assert by_key[_key("K1 E6")].verdict("linking_form").obstructed
    assert by_key[_key("K1 E8")].verdict("spin_sum").obstructed


def test_classify_index3():
    report = screening.classify(3)
    got = {r.config.key() for r in report.survivors}
    assert got == _keyset(tables.INDEX3_SURVIVORS)
    assert len(report.survivors) == 18
    assert report.cross_checks["every_realizable_type_survives"]
    assert {c.key() for c in report.unmarked_survivors} == _keyset(tables.INDEX3_OPEN)
    by_key = {r.config.key(): r for r in report.candidates}
    # The six case-3 eliminations via the diagonalization test.
    for tokens in ["A2(1,2) A7", "A2(1,2)", "A3(1,2)", "A6(1,2)",
                   "A9(1,2)", "A10(1,2)", "A2(2,2) A9", "A5(2,2) A6",
                   "A11(2,2)"]:
        assert by_key[_key(tokens)].verdict("donaldson").obstructed, tokens
    # Linking-form eliminations.
    for tokens in ["A2(1,2) E8", "A2(1,2) D5"]:
        assert by_key[_key(tokens)].verdict("linking_form").obstructed, tokens
    # Spin-sum eliminations.
    for tokens in ["A1(2) E8", "A3(2,2) E8", "D9(2)"]:
        assert by_key[_key(tokens)].verdict("spin_sum").obstructed, tokens
    # Case 5 dies entirely at the square-D test.
    for r in report.candidates:
        if r.case == 5:
            assert r.verdict("arithmetic").obstructed


def test_filter_order_insensitivity():
    # Every filter is a pure predicate of the configuration, so survivors do
    # not depend on evaluation order: recompute the surviving set from the
    # verdict lists under several permutations of the chain.
    import itertools
    for index in (2, 3):
        report = screening.classify(index)
        baseline = {r.config.key() for r in report.survivors}
        for perm in itertools.islice(itertools.permutations(range(6)), 0, 24, 5):
            survivors = set()
            for r in report.candidates:
                permuted = [r.verdicts[i] for i in perm]
                if not any(v.obstructed for v in permuted):
                    survivors.add(r.config.key())
            assert survivors == baseline


def test_evidence_replays_standalone():
    for index in (1, 2, 3):
        report = screening.classify(index)
        for r in report.candidates:
            for v in r.verdicts:
                assert screening.replay_verdict(r.config, v), (r.config.name, v.filter)


def test_five_singularity_cap():
    for index in (2, 3):
        for config in screening.enumerate_candidates(index):
            assert len(config.members) <= 4


def test_enumeration_is_deterministic():
    screening.enumerate_candidates.cache_clear()
    a = [c.name for c in screening.enumerate_candidates(3)]
    screening.enumerate_candidates.cache_clear()
    b = [c.name for c in screening.enumerate_candidates(3)]
    assert a == b
