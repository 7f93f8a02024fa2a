from __future__ import annotations

import math
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from app.indicators.config import IndicatorConfig, ZeroRPolicy
from app.indicators.fractional import fractional_weights
from app.indicators.report import compute_all
from app.indicators.snip import subject_field
from tests.factories import CENSUS, build, corpus_rows
from tests.oracle import Oracle

CONFIG = IndicatorConfig(census_year=CENSUS)
TOLERANCE = 1e-12


@st.composite
def member_r_lists(draw):
    """Per indexed journal, the r values of its subject-field members."""
    return draw(st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4), min_size=3, max_size=25))


def _fields_from_r_lists(r_lists):
    journals = [(f"J{k:02d}", True) for k in range(len(r_lists))] + [("X", False)]
    documents = []
    references = []
    for k, members in enumerate(r_lists):
        journal = f"J{k:02d}"
        documents.append((f"{journal}-old", journal, CENSUS - 7))
        documents += [(f"{journal}-w{i}", journal, CENSUS - 1) for i in range(max(members))]
        for m, r in enumerate(members):
            citer = f"{journal}-m{m}"
            documents.append((citer, "X", CENSUS))
            references.append((citer, f"{journal}-old"))
            references += [(citer, f"{journal}-w{i}") for i in range(r)]
    return journals, documents, references


class OracleEquivalenceTests(unittest.TestCase):
    def assertMatches(self, expected, actual, label: str) -> None:
        if expected is None:
            self.assertIsNone(actual, label)
            return
        self.assertIsNotNone(actual, label)
        self.assertTrue(
            math.isclose(float(expected), actual, rel_tol=TOLERANCE, abs_tol=0.0),
            f"{label}: expected {float(expected)!r}, got {actual!r}",
        )

    @settings(max_examples=500, derandomize=True, deadline=None)
    @given(corpus_rows())
    def test_every_indicator_matches_brute_force(self, rows) -> None:
        corpus = build(*rows)
        oracle = Oracle(*rows, census_year=CENSUS)
        exclude = compute_all(corpus, CONFIG, ZeroRPolicy.EXCLUDE)
        strict = compute_all(corpus, CONFIG, ZeroRPolicy.UNDEFINED_ON_ANY_ZERO)

        self.assertMatches(oracle.median_cp(), exclude.median_cp, "median_cp")
        for row, strict_row in zip(exclude.journals, strict.journals):
            journal = row.journal_id
            zero_count, zero_share = oracle.zero_r(journal)

            self.assertEqual(frozenset(oracle.subject_field(journal)), subject_field(corpus, journal, CONFIG))
            self.assertEqual(len(oracle.window_papers(journal)), row.paper_count)
            self.assertEqual(len(oracle.qualifying(journal)), row.citation_count)
            self.assertMatches(oracle.rip(journal), row.rip, f"{journal} rip")
            self.assertMatches(oracle.cp(journal), row.cp, f"{journal} cp")
            self.assertMatches(oracle.rdcp(journal), row.rdcp, f"{journal} rdcp")
            self.assertMatches(oracle.snip(journal), row.snip, f"{journal} snip")
            self.assertMatches(oracle.fcc_total(journal), row.fcc_total, f"{journal} fcc_total")
            self.assertMatches(oracle.fcc_windowed(journal), row.fcc_windowed, f"{journal} fcc_windowed")
            self.assertMatches(
                oracle.fcc_windowed(journal, undefined_on_zero=True),
                strict_row.fcc_windowed,
                f"{journal} fcc_windowed strict",
            )
            self.assertEqual(zero_count, row.zero_r_count)
            self.assertMatches(zero_share, row.zero_r_share, f"{journal} zero_r_share")


class MedianPropertyTests(unittest.TestCase):
    @settings(max_examples=100, derandomize=True, deadline=None)
    @given(member_r_lists())
    def test_at_most_half_the_journals_fall_on_each_side(self, r_lists) -> None:
        report = compute_all(build(*_fields_from_r_lists(r_lists)), CONFIG)
        rows = [row for row in report.journals if row.indexed and row.cp is not None]
        half = len(rows) // 2

        self.assertEqual(len(r_lists), len(rows))
        if report.median_cp == 0:
            return
        below = sum(1 for row in rows if row.cp == 0 or (row.rdcp is not None and row.rdcp < 1))
        above = sum(1 for row in rows if row.rdcp is not None and row.rdcp > 1)
        self.assertLessEqual(below, half)
        self.assertLessEqual(above, half)

    @settings(max_examples=30, derandomize=True, deadline=None)
    @given(st.integers(3, 25), st.integers(1, 6))
    def test_shared_cp_is_the_median(self, journal_count, r) -> None:
        report = compute_all(build(*_fields_from_r_lists([[r]] * journal_count)), CONFIG)

        self.assertEqual(float(r), report.median_cp)
        self.assertTrue(all(row.rdcp == 1.0 for row in report.journals if row.indexed))


class WeightSumTests(unittest.TestCase):
    @settings(max_examples=100, derandomize=True, deadline=None)
    @given(corpus_rows())
    def test_weights_of_every_citing_document_sum_to_one(self, rows) -> None:
        corpus = build(*rows)
        oracle = Oracle(*rows, census_year=CENSUS)

        for doc_id in corpus.doc_ids:
            weights = fractional_weights(corpus, doc_id)
            if not weights:
                self.assertEqual(0, oracle.n(doc_id))
                continue
            self.assertLessEqual(abs(math.fsum(weights.values()) - 1.0), TOLERANCE)
            expected = oracle.weights(doc_id)
            self.assertEqual(sorted(expected), sorted(weights))
            for key, mass in expected.items():
                self.assertTrue(math.isclose(float(mass), weights[key], rel_tol=TOLERANCE))


if __name__ == "__main__":
    unittest.main()
