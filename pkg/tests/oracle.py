"""
Brute-force indicator oracle over plain rows, in exact rational arithmetic.

Written with loops over the record lists only; it shares nothing with the
array engine so that agreement between the two is meaningful.
"""

from __future__ import annotations

from fractions import Fraction


class Oracle:
    def __init__(self, journals, documents, references, census_year, citation_window=3, field_window=10):
        self.indexed = {j: bool(indexed) for j, indexed in journals}
        self.docs = {}
        for d in documents:
            citable = True if len(d) < 4 else bool(d[3])
            self.docs[d[0]] = (d[1], d[2], citable)
        self.refs = [(r[0], r[1]) for r in references]
        self.year = census_year
        self.window = citation_window
        self.field_window = field_window
        self._r = {}
        self._n = None
        self._median = None

    def _in_window(self, year):
        return self.year - self.window <= year <= self.year - 1

    def _in_field_window(self, year):
        return self.year - self.field_window <= year <= self.year - 1

    def _is_citing(self, doc):
        _, year, citable = self.docs[doc]
        return citable and year == self.year

    def window_papers(self, journal):
        return {
            doc
            for doc, (j, year, citable) in self.docs.items()
            if j == journal and citable and self._in_window(year)
        }

    def n(self, doc):
        if self._n is None:
            self._n = {}
            for citing, _ in self.refs:
                self._n[citing] = self._n.get(citing, 0) + 1
        return self._n.get(doc, 0)

    def r(self, doc):
        if doc in self._r:
            return self._r[doc]
        count = 0
        for citing, cited in self.refs:
            if citing != doc or cited is None:
                continue
            journal, year, _ = self.docs[cited]
            if self.indexed[journal] and self._in_window(year):
                count += 1
        self._r[doc] = count
        return count

    def qualifying(self, journal):
        window = self.window_papers(journal)
        return [(citing, cited) for citing, cited in self.refs if cited in window and self._is_citing(citing)]

    def rip(self, journal):
        window = self.window_papers(journal)
        if not window:
            return None
        return Fraction(len(self.qualifying(journal)), len(window))

    def subject_field(self, journal):
        members = set()
        for citing, cited in self.refs:
            if cited is None or not self._is_citing(citing):
                continue
            j, year, citable = self.docs[cited]
            if j == journal and citable and self._in_field_window(year):
                members.add(citing)
        return members

    def cp(self, journal):
        members = self.subject_field(journal)
        if not members:
            return None
        return Fraction(sum(self.r(doc) for doc in members), len(members))

    def median_cp(self):
        if self._median is None:
            self._median = (self._median_uncached(),)
        return self._median[0]

    def _median_uncached(self):
        values = sorted(
            cp for cp in (self.cp(j) for j, indexed in self.indexed.items() if indexed) if cp is not None
        )
        if not values:
            return None
        mid = len(values) // 2
        if len(values) % 2:
            return values[mid]
        return (values[mid - 1] + values[mid]) / 2

    def rdcp(self, journal):
        cp = self.cp(journal)
        median = self.median_cp()
        if cp is None or median is None or median == 0 or cp == 0:
            return None
        return cp / median

    def snip(self, journal):
        rip = self.rip(journal)
        rdcp = self.rdcp(journal)
        if rip is None or rdcp is None:
            return None
        return rip / rdcp

    def fcc_total(self, journal):
        window = self.window_papers(journal)
        if not window:
            return None
        return sum((Fraction(1, self.n(citing)) for citing, _ in self.qualifying(journal)), Fraction(0)) / len(window)

    def fcc_windowed(self, journal, undefined_on_zero=False):
        window = self.window_papers(journal)
        if not window:
            return None
        if undefined_on_zero and any(self.r(doc) == 0 for doc in self.subject_field(journal)):
            return None
        total = Fraction(0)
        for citing, _ in self.qualifying(journal):
            r = self.r(citing)
            if r > 0:
                total += Fraction(1, r)
        return total / len(window)

    def zero_r(self, journal):
        members = self.subject_field(journal)
        zero = sum(1 for doc in members if self.r(doc) == 0)
        return zero, (Fraction(zero, len(members)) if members else None)

    def weights(self, doc):
        """1/n mass per cited journal, unresolved pooled under "unresolved"."""
        n = self.n(doc)
        masses = {}
        for citing, cited in self.refs:
            if citing != doc:
                continue
            key = "unresolved" if cited is None else self.docs[cited][0]
            masses[key] = masses.get(key, Fraction(0)) + Fraction(1, n)
        return masses
