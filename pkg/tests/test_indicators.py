from __future__ import annotations

import unittest

import numpy as np
from hypothesis import given, settings
from pydantic import ValidationError

from app.corpus.errors import UnknownJournalError
from app.corpus.windows import citing_profile, papers_in_window
from app.indicators.config import IndicatorConfig
from app.indicators.report import compute_all
from app.indicators.snip import (
    EMPTY_SUBJECT_FIELD,
    NO_WINDOW_PAPERS,
    UNDEFINED_CITATION_POTENTIAL,
    UNDEFINED_MEDIAN,
    UNDEFINED_RIP,
    ZERO_CITATION_POTENTIAL,
    ZERO_MEDIAN,
    citation_potential,
    median_citation_potential,
    midpoint_median,
    raw_impact_per_paper,
    rdcp_reason,
    relative_citation_potential,
    snip,
    subject_field,
)
from tests.factories import CENSUS, build, corpus_rows, papers

CONFIG = IndicatorConfig(census_year=CENSUS)
PROPERTY = settings(max_examples=60, derandomize=True, deadline=None)


def _field_with_cps(cps: dict[str, int], extra_journals=(), extra_docs=(), extra_refs=()):
    """Journal k gets cps[k] window papers and one census-year citer in journal X citing all of them."""
    journals = [*cps, ("X", False), *extra_journals]
    documents = list(extra_docs)
    references = list(extra_refs)
    for journal_id, r in cps.items():
        window = papers(journal_id, CENSUS - 1, r)
        documents += window
        documents.append((f"cite-{journal_id}", "X", CENSUS))
        references += [(f"cite-{journal_id}", doc_id) for doc_id, _, _ in window]
    return build(journals, documents, references)


def _duplicate_documents(journals, documents, references, select=lambda doc: True):
    """Copy selected documents (suffix "b") with their outgoing references."""
    chosen = {doc[0] for doc in documents if select(doc)}
    copies = [(f"{doc[0]}b", *doc[1:]) for doc in documents if doc[0] in chosen]
    copied_refs = []
    for ref in references:
        if ref[0] not in chosen:
            continue
        target = ref[1]
        if target is not None and target in chosen:
            target = f"{target}b"
        copied_refs.append((f"{ref[0]}b", target, *ref[2:]))
    return journals, documents + copies, references + copied_refs


class RawImpactTests(unittest.TestCase):
    def setUp(self) -> None:
        self.corpus = build(
            ["J1", "C"],
            [
                ("a", "J1", 2005),
                ("b", "J1", 2006),
                ("old", "J1", 2003),
                ("c1", "C", 2007),
                ("c2", "C", 2007),
                ("c3", "C", 2007),
                ("c4", "C", 2007),
                ("nc", "C", 2007, False),
                ("early", "C", 2006),
            ],
            [
                ("c1", "a"),
                ("c2", "a"),
                ("c3", "a"),
                ("c4", "b"),
                ("nc", "a"),
                ("early", "a"),
                ("c1", "old"),
            ],
        )

    def test_two_window_papers_with_three_and_one_citations(self) -> None:
        self.assertEqual(2.0, raw_impact_per_paper(self.corpus, "J1", CONFIG))

    def test_citations_to_papers_without_census_citations_count_zero(self) -> None:
        self.assertEqual(0.0, raw_impact_per_paper(self.corpus, "C", CONFIG))

    def test_journal_without_window_papers_is_undefined(self) -> None:
        corpus = build(["J1"], [("x", "J1", 2000)], [])

        self.assertIsNone(raw_impact_per_paper(corpus, "J1", CONFIG))

    def test_unknown_journal_raises(self) -> None:
        for operation in (raw_impact_per_paper, subject_field, citation_potential):
            with self.subTest(operation=operation.__name__):
                with self.assertRaises(UnknownJournalError):
                    operation(self.corpus, "nope", CONFIG)


class SubjectFieldTests(unittest.TestCase):
    def setUp(self) -> None:
        self.corpus = build(
            ["J1", "C"],
            [
                ("p1997", "J1", 1997),
                ("p1996", "J1", 1996),
                ("m1", "C", 2007),
                ("m2", "C", 2007),
            ],
            [("m1", "p1997"), ("m2", "p1996")],
        )

    def test_citing_a_ten_year_old_paper_makes_a_member(self) -> None:
        self.assertEqual(frozenset({"m1"}), subject_field(self.corpus, "J1", CONFIG))

    def test_uncited_journal_has_empty_field_and_undefined_cp(self) -> None:
        self.assertEqual(frozenset(), subject_field(self.corpus, "C", CONFIG))
        self.assertIsNone(citation_potential(self.corpus, "C", CONFIG))

    def test_membership_ignores_references_outside_the_field_window(self) -> None:
        documents = [
            ("young", "J1", 2007),
            ("ancient", "J1", 1990),
            ("mid", "J1", 2000),
            ("m", "C", 2007),
            ("only_outside", "C", 2007),
        ]
        full = build(
            ["J1", "C"],
            documents,
            [("m", "young"), ("m", "ancient"), ("m", "mid"), ("only_outside", "young"), ("only_outside", "ancient")],
        )
        trimmed = build(["J1", "C"], documents, [("m", "mid")])

        self.assertEqual(frozenset({"m"}), subject_field(full, "J1", CONFIG))
        self.assertEqual(subject_field(full, "J1", CONFIG), subject_field(trimmed, "J1", CONFIG))

    def test_non_citable_documents_are_not_members(self) -> None:
        corpus = build(["J1", "C"], [("p", "J1", 2005), ("note", "C", 2007, False)], [("note", "p")])

        self.assertEqual(frozenset(), subject_field(corpus, "J1", CONFIG))


class CitationPotentialTests(unittest.TestCase):
    def test_constant_r_gives_that_mean(self) -> None:
        window = papers("J1", 2005, 5)
        corpus = build(
            ["J1", "C"],
            window + [("m1", "C", 2007), ("m2", "C", 2007)],
            [(m, doc_id) for m in ("m1", "m2") for doc_id, _, _ in window],
        )

        self.assertEqual(5.0, citation_potential(corpus, "J1", CONFIG))

    def test_zero_r_members_are_included_in_the_mean(self) -> None:
        window = papers("J1", 2005, 6)
        corpus = build(
            ["J1", "C"],
            window + [("old", "J1", 1999), ("m1", "C", 2007), ("m2", "C", 2007), ("m3", "C", 2007)],
            [("m1", "old"), ("m2", "old")] + [("m3", doc_id) for doc_id, _, _ in window],
        )

        self.assertEqual(frozenset({"m1", "m2", "m3"}), subject_field(corpus, "J1", CONFIG))
        self.assertEqual(2.0, citation_potential(corpus, "J1", CONFIG))

    def test_density_five_times_higher_gives_five_times_the_cp(self) -> None:
        low = papers("L", 2006, 10)
        high = papers("H", 2006, 50)
        corpus = build(
            ["L", "H"],
            low + high + [("low-citer", "L", 2007), ("high-citer", "H", 2007)],
            [("low-citer", doc_id) for doc_id, _, _ in low] + [("high-citer", doc_id) for doc_id, _, _ in high],
        )

        ratio = citation_potential(corpus, "H", CONFIG) / citation_potential(corpus, "L", CONFIG)

        self.assertEqual(5.0, ratio)

    def test_window_setting_drives_both_rip_and_r(self) -> None:
        corpus = build(
            ["J1", "C"],
            [("p2005", "J1", 2005), ("p2003", "J1", 2003), ("c1", "C", 2007)],
            [("c1", "p2005"), ("c1", "p2003")],
        )

        for window, expected_r in ((3, 1), (4, 2)):
            with self.subTest(window=window):
                config = IndicatorConfig(census_year=CENSUS, citation_window=window)
                in_window = papers_in_window(corpus, "J1", CENSUS, window)
                profile = citing_profile(corpus, "c1", CENSUS, window)

                self.assertEqual(expected_r, profile.r_windowed_indexed)
                self.assertEqual(float(expected_r), citation_potential(corpus, "J1", config))
                self.assertEqual(expected_r / len(in_window), raw_impact_per_paper(corpus, "J1", config))


class MedianTests(unittest.TestCase):
    def test_midpoint_median(self) -> None:
        self.assertEqual(4.0, midpoint_median(np.array([8.0, 2.0, 4.0])))
        self.assertEqual(5.0, midpoint_median(np.array([2.0, 4.0, 6.0, 8.0])))
        self.assertEqual(3.0, midpoint_median(np.array([3.0, 3.0, 3.0, 3.0])))
        self.assertIsNone(midpoint_median(np.array([], dtype=np.float64)))

    def test_median_uses_indexed_journals_only(self) -> None:
        corpus = _field_with_cps(
            {"A": 2, "B": 4, "C": 8},
            extra_journals=[("N", False)],
            extra_docs=[("n-paper", "N", 2006), ("n-citer", "X", 2007)],
            extra_refs=[("n-citer", "n-paper")],
        )

        self.assertEqual(0.0, citation_potential(corpus, "N", CONFIG))
        self.assertEqual(4.0, median_citation_potential(corpus, CONFIG))

    def test_median_undefined_without_any_cp(self) -> None:
        corpus = build(["J1"], [("x", "J1", 2006)], [])

        self.assertIsNone(median_citation_potential(corpus, CONFIG))


class NormalizationTests(unittest.TestCase):
    def test_rdcp_is_cp_over_median(self) -> None:
        self.assertEqual(1.0, relative_citation_potential(4.0, 4.0))
        self.assertEqual([0.5, 1.0, 2.0], [relative_citation_potential(cp, 4.0) for cp in (2.0, 4.0, 8.0)])

    def test_rdcp_reasons(self) -> None:
        self.assertEqual(ZERO_MEDIAN, rdcp_reason(2.0, 0.0))
        self.assertEqual(UNDEFINED_MEDIAN, rdcp_reason(2.0, None))
        self.assertEqual(UNDEFINED_CITATION_POTENTIAL, rdcp_reason(None, 4.0))
        self.assertEqual(ZERO_CITATION_POTENTIAL, rdcp_reason(0.0, 4.0))
        self.assertIsNone(relative_citation_potential(2.0, 0.0))
        self.assertIsNone(relative_citation_potential(0.0, 4.0))

    def test_snip_divides_rip_by_rdcp(self) -> None:
        self.assertEqual(3.0, snip(3.0, 1.0))
        self.assertEqual(4.0, snip(2.0, 0.5))
        self.assertIsNone(snip(None, 1.0))
        self.assertIsNone(snip(2.0, None))

    def test_field_normalization_on_three_journals(self) -> None:
        corpus = _field_with_cps({"A": 2, "B": 4, "C": 8})

        report = compute_all(corpus, CONFIG)

        self.assertEqual(4.0, report.median_cp)
        self.assertEqual([0.5, 1.0, 2.0], [report.row(j).rdcp for j in ("A", "B", "C")])
        self.assertEqual([2.0, 1.0, 0.5], [report.row(j).snip for j in ("A", "B", "C")])


class ConfigTests(unittest.TestCase):
    def test_defaults(self) -> None:
        self.assertEqual((3, 10, "midpoint_average"), (CONFIG.citation_window, CONFIG.field_window, CONFIG.median_method))
        self.assertEqual((2004, 2006), CONFIG.citation_years)
        self.assertEqual((1997, 2006), CONFIG.field_years)

    def test_field_window_shorter_than_citation_window_is_rejected(self) -> None:
        with self.assertRaises(ValidationError):
            IndicatorConfig(census_year=CENSUS, citation_window=5, field_window=4)

    def test_zero_citation_window_is_rejected(self) -> None:
        with self.assertRaises(ValidationError):
            IndicatorConfig(census_year=CENSUS, citation_window=0)


class ComputeAllTests(unittest.TestCase):
    def test_single_journal_report_matches_per_operation_calls(self) -> None:
        window = papers("J1", 2006, 3)
        corpus = build(
            ["J1"],
            window + [("c1", "J1", 2007), ("c2", "J1", 2007)],
            [("c1", "J1-2006-0"), ("c1", "J1-2006-1"), ("c2", "J1-2006-0"), ("c2", None)],
        )

        report = compute_all(corpus, CONFIG)
        row = report.row("J1")

        self.assertEqual(raw_impact_per_paper(corpus, "J1", CONFIG), row.rip)
        self.assertEqual(citation_potential(corpus, "J1", CONFIG), row.cp)
        self.assertEqual(len(subject_field(corpus, "J1", CONFIG)), row.subject_field_size)
        self.assertEqual(1.0, row.rdcp)
        self.assertEqual(row.rip, row.snip)
        self.assertEqual({}, row.reasons)

    def test_census_year_without_citable_documents_gives_reasons(self) -> None:
        corpus = build(["J1", "J2"], [("x", "J1", 2000), ("y", "J2", 1999)], [("x", "y")])

        report = compute_all(corpus, CONFIG)

        self.assertIsNone(report.median_cp)
        self.assertEqual(UNDEFINED_MEDIAN, report.median_cp_reason)
        for row in report.journals:
            with self.subTest(journal=row.journal_id):
                self.assertEqual((None, None, None, None), (row.rip, row.cp, row.rdcp, row.snip))
                self.assertEqual(NO_WINDOW_PAPERS, row.reasons["rip"])
                self.assertEqual(EMPTY_SUBJECT_FIELD, row.reasons["cp"])
                self.assertEqual(UNDEFINED_RIP, row.reasons["snip"])

    def test_rows_are_ordered_by_journal_id(self) -> None:
        corpus = build(["Z", "A", "M"], [], [])

        self.assertEqual(["A", "M", "Z"], [row.journal_id for row in compute_all(corpus, CONFIG).journals])

    @PROPERTY
    @given(corpus_rows())
    def test_repeat_runs_give_identical_reports(self, rows) -> None:
        first = compute_all(build(*rows), CONFIG)
        second = compute_all(build(*rows), CONFIG)

        self.assertEqual(first, second)


class InvarianceTests(unittest.TestCase):
    def _snip_inputs(self, corpus) -> list:
        report = compute_all(corpus, CONFIG)
        return [(row.journal_id, row.cp, row.rdcp, row.snip, row.subject_field_size) for row in report.journals]

    @PROPERTY
    @given(corpus_rows())
    def test_unresolved_references_leave_cp_and_snip_unchanged(self, rows) -> None:
        journals, documents, references = rows
        extra = [(doc[0], None, 1980) for doc in documents if doc[2] == CENSUS] * 2

        base = self._snip_inputs(build(journals, documents, references))
        padded = self._snip_inputs(build(journals, documents, references + extra))

        self.assertEqual(base, padded)

    @PROPERTY
    @given(corpus_rows())
    def test_references_older_than_both_windows_leave_cp_and_snip_unchanged(self, rows) -> None:
        journals, documents, references = rows
        ancient = [(f"ancient-{i}", journals[0][0], 1980) for i in range(3)]
        extra = [(doc[0], old[0]) for doc in documents if doc[2] == CENSUS for old in ancient]

        base = self._snip_inputs(build(journals, documents, references))
        padded = self._snip_inputs(build(journals, documents + ancient, references + extra))

        self.assertEqual(base, padded)

    def test_old_references_inside_an_existing_field_leave_cp_unchanged(self) -> None:
        window = papers("J1", 2006, 4)
        documents = window + [("old", "J1", 2000), ("m1", "C", 2007), ("m2", "C", 2007)]
        references = [("m1", "J1-2006-0"), ("m1", "J1-2006-1"), ("m2", "J1-2006-2")]
        base = build(["J1", "C"], documents, references)
        padded = build(["J1", "C"], documents, references + [("m1", "old"), ("m2", "old")])

        self.assertEqual(citation_potential(base, "J1", CONFIG), citation_potential(padded, "J1", CONFIG))
        self.assertEqual(1.5, citation_potential(padded, "J1", CONFIG))

    @PROPERTY
    @given(corpus_rows())
    def test_zero_r_members_pull_cp_below_the_nonzero_mean(self, rows) -> None:
        report = compute_all(build(*rows), CONFIG)

        for row in report.journals:
            if row.cp is None:
                continue
            if row.zero_r_count == row.subject_field_size:
                self.assertEqual(0.0, row.cp)
            elif row.zero_r_count > 0:
                self.assertLess(row.cp, row.nonzero_r_mean)
            else:
                self.assertEqual(row.cp, row.nonzero_r_mean)

    def test_homogeneous_r_makes_snip_equal_rip(self) -> None:
        journals = ["A", "B", "C"]
        window = [doc for journal in journals for doc in papers(journal, 2005, 4)]
        documents = window + [("ancient", "A", 1980)]
        references = []
        for i in range(9):
            citer = f"c{i}"
            documents.append((citer, journals[i % 3], CENSUS))
            for k in range(3):
                references.append((citer, window[(i + 4 * k + i // 3) % len(window)][0]))
            references.append((citer, None, 1990))
            references.append((citer, "ancient"))
        corpus = build(journals, documents, references)

        report = compute_all(corpus, CONFIG)

        for row in report.journals:
            with self.subTest(journal=row.journal_id):
                self.assertEqual(3.0, row.cp)
                self.assertEqual(1.0, row.rdcp)
                self.assertEqual(row.rip, row.snip)

    @PROPERTY
    @given(corpus_rows(max_documents=30, max_references=150))
    def test_duplicating_the_whole_corpus_keeps_every_ratio(self, rows) -> None:
        base = compute_all(build(*rows), CONFIG)
        doubled = compute_all(build(*_duplicate_documents(*rows)), CONFIG)

        for before, after in zip(base.journals, doubled.journals):
            self.assertEqual(
                (before.rip, before.cp, before.rdcp, before.snip),
                (after.rip, after.cp, after.rdcp, after.snip),
            )

    @PROPERTY
    @given(corpus_rows(max_documents=30, max_references=150))
    def test_duplicating_census_citers_doubles_rip_and_keeps_cp(self, rows) -> None:
        def census_citer(doc) -> bool:
            return doc[2] == CENSUS and (len(doc) < 4 or bool(doc[3]))

        base = compute_all(build(*rows), CONFIG)
        doubled = compute_all(build(*_duplicate_documents(*rows, select=census_citer)), CONFIG)

        for before, after in zip(base.journals, doubled.journals):
            self.assertEqual((before.cp, before.rdcp), (after.cp, after.rdcp))
            if before.rip is not None:
                self.assertEqual(2 * before.rip, after.rip)
            if before.snip is not None:
                self.assertEqual(2 * before.snip, after.snip)


if __name__ == "__main__":
    unittest.main()
