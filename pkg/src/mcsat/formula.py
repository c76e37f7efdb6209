"""CNF formulas over integer literals, with occurrence indexing.

Literals are nonzero ints: +v is the positive literal of variable v and -v
its negation.  A formula is a multiset of clauses addressed by stable
integer clause ids; an occurrence index maps each literal to the set of
clause ids containing it, and a per-literal occurrence counter keeps
duplicate literals (which may exist before reduction) counted separately.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Malformed DIMACS input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ContradictionError(ValueError):
    """An assignment set contains both a literal and its negation."""


class StructureError(RuntimeError):
    """A structural precondition on a (reduced) formula does not hold."""


def neg(lit: int) -> int:
    """Negation of a literal; an involution."""
    return -lit


def variable(lit: int) -> int:
    return abs(lit)


def literal_key(lit: int) -> tuple[int, int]:
    """Sort key ordering literals by (variable, polarity), positive first."""
    return (abs(lit), 0 if lit > 0 else 1)


class Formula:
    """Multiset of clauses with a literal -> clause-id occurrence index.

    Clause ids and variable ids are never reused: clause ids count up from 0
    and `fresh_variable` only increments, so traces stay stable across runs.
    """

    __slots__ = ("_clauses", "_occ", "_counts", "_next_cid", "_length",
                 "_empty_clauses", "next_fresh_variable")

    def __init__(self) -> None:
        self._clauses: dict[int, list[int]] = {}
        self._occ: dict[int, set[int]] = {}
        self._counts: dict[int, int] = {}
        self._next_cid = 0
        self._length = 0
        self._empty_clauses = 0
        self.next_fresh_variable = 1

    @classmethod
    def from_clauses(cls, clauses: Iterable[Iterable[int]]) -> "Formula":
        f = cls()
        for lits in clauses:
            f.add_clause(lits)
        return f

    def copy(self) -> "Formula":
        f = Formula.__new__(Formula)
        f._clauses = {cid: list(cl) for cid, cl in self._clauses.items()}
        f._occ = {lit: set(cids) for lit, cids in self._occ.items()}
        f._counts = dict(self._counts)
        f._next_cid = self._next_cid
        f._length = self._length
        f._empty_clauses = self._empty_clauses
        f.next_fresh_variable = self.next_fresh_variable
        return f

    # ------------------------------------------------------------------
    # mutators (occurrence index kept consistent at every step)

    def add_clause(self, lits: Iterable[int]) -> int:
        cl = [int(l) for l in lits]
        if any(l == 0 for l in cl):
            raise ValueError("0 is not a literal")
        cid = self._next_cid
        self._next_cid += 1
        self._clauses[cid] = cl
        for l in cl:
            self._counts[l] = self._counts.get(l, 0) + 1
            if abs(l) >= self.next_fresh_variable:
                self.next_fresh_variable = abs(l) + 1
        for l in set(cl):
            self._occ.setdefault(l, set()).add(cid)
        self._length += len(cl)
        if not cl:
            self._empty_clauses += 1
        return cid

    def remove_clause(self, cid: int) -> None:
        cl = self._clauses.pop(cid)
        for l in cl:
            self._dec_count(l)
        for l in set(cl):
            self._drop_occ(l, cid)
        self._length -= len(cl)
        if not cl:
            self._empty_clauses -= 1

    def remove_literal(self, cid: int, lit: int) -> None:
        """Remove every copy of `lit` from clause `cid`."""
        cl = self._clauses[cid]
        n = cl.count(lit)
        if n == 0:
            raise ValueError(f"literal {lit} not in clause {cid}")
        self._clauses[cid] = [l for l in cl if l != lit]
        for _ in range(n):
            self._dec_count(lit)
        self._drop_occ(lit, cid)
        self._length -= n
        if not self._clauses[cid]:
            self._empty_clauses += 1

    def rewrite_clause(self, cid: int, lits: Iterable[int]) -> None:
        """Replace the contents of clause `cid`, keeping its id."""
        old = self._clauses[cid]
        for l in old:
            self._dec_count(l)
        for l in set(old):
            self._drop_occ(l, cid)
        self._length -= len(old)
        if not old:
            self._empty_clauses -= 1
        cl = [int(l) for l in lits]
        self._clauses[cid] = cl
        for l in cl:
            self._counts[l] = self._counts.get(l, 0) + 1
        for l in set(cl):
            self._occ.setdefault(l, set()).add(cid)
        self._length += len(cl)
        if not cl:
            self._empty_clauses += 1

    def assign_literal(self, lit: int) -> None:
        """One assignment operation: satisfy `lit`, delete its clauses and
        every occurrence of its negation."""
        for cid in sorted(self._occ.get(lit, ())):
            self.remove_clause(cid)
        for cid in sorted(self._occ.get(-lit, ())):
            self.remove_literal(cid, -lit)

    def fresh_variable(self) -> int:
        v = self.next_fresh_variable
        self.next_fresh_variable += 1
        return v

    def _dec_count(self, lit: int) -> None:
        c = self._counts[lit] - 1
        if c:
            self._counts[lit] = c
        else:
            del self._counts[lit]

    def _drop_occ(self, lit: int, cid: int) -> None:
        s = self._occ[lit]
        s.discard(cid)
        if not s:
            del self._occ[lit]

    # ------------------------------------------------------------------
    # queries

    def clause(self, cid: int) -> list[int]:
        """The literal list of clause `cid` (callers must not mutate it)."""
        return self._clauses[cid]

    def clause_ids(self) -> list[int]:
        return sorted(self._clauses)

    def iter_clauses(self) -> Iterator[tuple[int, list[int]]]:
        for cid in sorted(self._clauses):
            yield cid, self._clauses[cid]

    @property
    def num_clauses(self) -> int:
        return len(self._clauses)

    def is_empty(self) -> bool:
        return not self._clauses

    def has_empty_clause(self) -> bool:
        return self._empty_clauses > 0

    def occurrences(self, lit: int) -> set[int]:
        return self._occ.get(lit, set())

    def count(self, lit: int) -> int:
        """Occurrences of `lit`, duplicates counted separately."""
        return self._counts.get(lit, 0)

    def degree(self, v: int) -> int:
        v = abs(v)
        return self._counts.get(v, 0) + self._counts.get(-v, 0)

    def literal_profile(self, lit: int) -> tuple[int, int]:
        """(i, j) such that `lit` occurs i times and its negation j times."""
        return (self._counts.get(lit, 0), self._counts.get(-lit, 0))

    def variables(self) -> list[int]:
        return sorted({abs(l) for l in self._counts})

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.variables()), default=0)

    def length(self) -> int:
        """L: total number of literal occurrences."""
        return self._length

    def clause_multiset(self) -> tuple[tuple[int, ...], ...]:
        """Canonical form for clause-multiset equality in tests."""
        return tuple(sorted(tuple(sorted(cl, key=literal_key))
                            for cl in self._clauses.values()))

    def check_consistency(self) -> None:
        """Rebuild the index from scratch and compare (debug/audit mode)."""
        counts: dict[int, int] = {}
        occ: dict[int, set[int]] = {}
        length = 0
        empties = 0
        for cid, cl in self._clauses.items():
            length += len(cl)
            if not cl:
                empties += 1
            for l in cl:
                counts[l] = counts.get(l, 0) + 1
            for l in set(cl):
                occ.setdefault(l, set()).add(cid)
        if counts != self._counts:
            raise StructureError("occurrence counts inconsistent with clauses")
        if occ != self._occ:
            raise StructureError("occurrence index inconsistent with clauses")
        if length != self._length:
            raise StructureError("cached length inconsistent with clauses")
        if empties != self._empty_clauses:
            raise StructureError("cached empty-clause count inconsistent")

    def __repr__(self) -> str:
        cls = " ".join("(" + " ".join(map(str, cl)) + ")"
                       for _, cl in self.iter_clauses())
        return f"Formula[{cls}]"


# ----------------------------------------------------------------------
# DIMACS I/O

def parse_dimacs(text: str | bytes) -> Formula:
    """Parse DIMACS CNF.  Literal order and duplicate literals are kept
    verbatim; reduction is a separate concern."""
    if isinstance(text, bytes):
        text = text.decode()
    nvars: int | None = None
    clauses: list[list[int]] = []
    current: list[int] = []
    lineno = 0
    open_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if nvars is not None:
                raise ParseError("duplicate 'p cnf' header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise ParseError(f"malformed header {line!r}", lineno)
            try:
                nvars, _nclauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed header {line!r}", lineno) from None
            if nvars < 0 or _nclauses < 0:
                raise ParseError(f"malformed header {line!r}", lineno)
            continue
        if nvars is None:
            raise ParseError("clause data before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad token {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                if abs(lit) > nvars:
                    raise ParseError(
                        f"literal {lit} exceeds declared variable count {nvars}",
                        lineno)
                if not current:
                    open_line = lineno
                current.append(lit)
    if nvars is None:
        raise ParseError("no 'p cnf' header (empty token stream)", max(lineno, 1))
    if current:
        raise ParseError("clause not terminated by 0", open_line)
    f = Formula.from_clauses(clauses)
    f.next_fresh_variable = max(f.next_fresh_variable, nvars + 1)
    return f


def emit_dimacs(f: Formula) -> str:
    """Emit DIMACS CNF such that parse(emit(f)) is clause-multiset-equal."""
    maxvar = max((abs(l) for _, cl in f.iter_clauses() for l in cl), default=0)
    lines = [f"p cnf {maxvar} {f.num_clauses}"]
    for _, cl in f.iter_clauses():
        lines.append(" ".join([*map(str, cl), "0"]))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# assignment

def assign(f: Formula, literals: Iterable[int]) -> Formula:
    """Assignment operation for a set of literals: for each literal z set
    true, delete every clause containing z and remove every occurrence of
    its negation.  No reduction rules are applied."""
    s = set(literals)
    for l in s:
        if -l in s:
            raise ContradictionError(f"assignment contains both {l} and {-l}")
    out = f.copy()
    for l in sorted(s, key=literal_key):
        out.assign_literal(l)
    return out


# ----------------------------------------------------------------------
# neighbor statistics

@dataclass
class NeighborStats:
    """Counts over the neighbors of one literal, keyed by neighbor degree.

    n[i]: literals of degree i among the neighbors; n2/n3plus split n by
    co-occurrence in 2-clauses vs 3+-clauses; t1[i]/t2[i]: degree-i
    variables with exactly one / both polarities among the neighbors.
    """

    n: Counter = field(default_factory=Counter)
    n2: Counter = field(default_factory=Counter)
    n3plus: Counter = field(default_factory=Counter)
    t1: Counter = field(default_factory=Counter)
    t2: Counter = field(default_factory=Counter)

    def total(self, degrees: Iterable[int] | None = None) -> int:
        if degrees is None:
            return sum(self.n.values())
        return sum(self.n[i] for i in degrees)


def neighbor_stats(f: Formula, lit: int) -> NeighborStats:
    """Neighbor counts for `lit` in a reduced formula.

    Raises StructureError when the reduced-formula precondition is broken:
    a clause containing `lit` twice, or the same neighbor literal appearing
    in two clauses alongside `lit`.
    """
    stats = NeighborStats()
    polarity: dict[int, set[int]] = {}
    seen: set[int] = set()
    for cid in sorted(f.occurrences(lit)):
        cl = f.clause(cid)
        if cl.count(lit) > 1:
            raise StructureError(
                f"clause {cid} contains literal {lit} twice (formula not reduced)")
        k = len(cl)
        for other in cl:
            if other == lit:
                continue
            if other in seen:
                raise StructureError(
                    f"neighbor {other} of {lit} repeats across clauses "
                    f"(formula not reduced)")
            seen.add(other)
            d = f.degree(other)
            stats.n[d] += 1
            if k == 2:
                stats.n2[d] += 1
            else:
                stats.n3plus[d] += 1
            polarity.setdefault(abs(other), set()).add(other)
    for v, lits in polarity.items():
        d = f.degree(v)
        if len(lits) == 1:
            stats.t1[d] += 1
        else:
            stats.t2[d] += 1
    return stats


# ----------------------------------------------------------------------
# clause-clause incidence graph

@dataclass
class IncidenceGraph:
    """Bipartite graph between the clauses containing a (2,3)-literal x and
    those containing its negation; an edge joins two clauses sharing a
    variable other than var(x)."""

    x_side: list[int]
    y_side: list[int]
    edges: list[tuple[int, int]]

    def vertex_degrees(self) -> list[int]:
        deg = [0] * (len(self.x_side) + len(self.y_side))
        for i, j in self.edges:
            deg[i] += 1
            deg[len(self.x_side) + j] += 1
        return deg


def incidence_graph(f: Formula, x: int) -> IncidenceGraph:
    if f.literal_profile(x) != (2, 3):
        raise StructureError(f"literal {x} is not a (2,3)-literal")
    xv = abs(x)
    x_side = sorted(f.occurrences(x))
    y_side = sorted(f.occurrences(-x))
    x_vars = [{abs(l) for l in f.clause(c)} - {xv} for c in x_side]
    y_vars = [{abs(l) for l in f.clause(c)} - {xv} for c in y_side]
    edges = [(i, j)
             for i in range(len(x_side)) for j in range(len(y_side))
             if x_vars[i] & y_vars[j]]
    return IncidenceGraph(x_side, y_side, edges)


def has_matching_size_2(g: IncidenceGraph) -> bool:
    """True iff two vertex-disjoint edges exist (exhaustive pair check)."""
    for (a, b), (c, d) in combinations(g.edges, 2):
        if a != c and b != d:
            return True
    return False


def degree_zero_vertices(g: IncidenceGraph) -> list[int]:
    used_x = {i for i, _ in g.edges}
    used_y = {j for _, j in g.edges}
    out = [cid for i, cid in enumerate(g.x_side) if i not in used_x]
    out += [cid for j, cid in enumerate(g.y_side) if j not in used_y]
    return out
