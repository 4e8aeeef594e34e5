"""Solution sequences and the interpreter environment."""

from __future__ import annotations

import os
import pickle
import struct
import tempfile
import weakref
from collections import Counter
from typing import Iterable, Iterator, Mapping

from ..errors import UnassignedVariable
from .terms import RdfTerm

Row = tuple  # tuple[RdfTerm | None, ...] aligned with SolutionSequence.variables

_FRAME = struct.Struct("<I")


def _remove(path: str) -> None:
    try:
        os.unlink(path)
    except OSError:
        pass


class SolutionSequence:
    """An immutable, ordered multiset of solution mappings.

    Rows are tuples aligned with ``variables``; ``None`` marks an unbound
    variable. When ``spill_threshold`` is given and the row count exceeds
    it, rows are written to a temporary file (length-prefixed pickles) and
    streamed back on iteration.
    """

    __slots__ = ("variables", "_rows", "_path", "_count", "_values", "_finalizer", "__weakref__")

    def __init__(self, variables: Iterable[str], rows: Iterable[Row] = (), spill_threshold: int | None = None):
        self.variables: tuple[str, ...] = tuple(variables)
        self._values: str | None = None
        self._path: str | None = None
        self._finalizer = None
        width = len(self.variables)
        buffer: list[Row] = []
        handle = None
        count = 0
        for row in rows:
            row = tuple(row)
            if len(row) != width:
                raise ValueError(f"row has {len(row)} values, expected {width}")
            count += 1
            if handle is not None:
                self._write(handle, row)
                continue
            buffer.append(row)
            if spill_threshold is not None and len(buffer) > spill_threshold:
                fd, self._path = tempfile.mkstemp(prefix="sparqal-", suffix=".rows")
                self._finalizer = weakref.finalize(self, _remove, self._path)
                handle = os.fdopen(fd, "wb")
                for buffered in buffer:
                    self._write(handle, buffered)
                buffer = []
        if handle is not None:
            handle.close()
            self._rows = None
        else:
            self._rows = tuple(buffer)
        self._count = count

    @staticmethod
    def _write(handle, row: Row) -> None:
        data = pickle.dumps(row, protocol=pickle.HIGHEST_PROTOCOL)
        handle.write(_FRAME.pack(len(data)))
        handle.write(data)

    @classmethod
    def from_mappings(cls, variables: Iterable[str], mappings: Iterable[Mapping[str, RdfTerm]], **kw) -> "SolutionSequence":
        variables = tuple(variables)
        return cls(variables, (tuple(m.get(v) for v in variables) for m in mappings), **kw)

    @classmethod
    def empty(cls, variables: Iterable[str] = ()) -> "SolutionSequence":
        return cls(variables, ())

    @property
    def spilled(self) -> bool:
        return self._path is not None

    def rows(self) -> Iterator[Row]:
        if self._rows is not None:
            yield from self._rows
            return
        with open(self._path, "rb") as fh:
            while True:
                head = fh.read(_FRAME.size)
                if not head:
                    return
                (size,) = _FRAME.unpack(head)
                yield pickle.loads(fh.read(size))

    __iter__ = rows

    def __len__(self) -> int:
        return self._count

    def mappings(self) -> Iterator[dict[str, RdfTerm]]:
        for row in self.rows():
            yield {v: t for v, t in zip(self.variables, row) if t is not None}

    def column(self, variable: str) -> Iterator[RdfTerm | None]:
        idx = self.variables.index(variable)
        for row in self.rows():
            yield row[idx]

    def binds(self, variable: str) -> bool:
        """True if some mapping binds ``variable``."""
        if variable not in self.variables:
            return False
        return any(t is not None for t in self.column(variable))

    def filter(self, predicate, spill_threshold: int | None = None) -> "SolutionSequence":
        """New sequence with the rows (as tuples) satisfying ``predicate``."""
        return SolutionSequence(self.variables, (r for r in self.rows() if predicate(r)), spill_threshold)

    def values_block(self) -> str:
        if self._values is None:
            from .values import serialize_values_block

            self._values = serialize_values_block(self)
        return self._values

    def mapping_keys(self) -> Iterator[frozenset]:
        """Each mapping as a hashable set of (variable, term) pairs."""
        for row in self.rows():
            yield frozenset((v, t) for v, t in zip(self.variables, row) if t is not None)

    def as_set(self) -> frozenset:
        return frozenset(self.mapping_keys())

    def as_multiset(self) -> Counter:
        return Counter(self.mapping_keys())

    def __repr__(self) -> str:
        return f"SolutionSequence({list(self.variables)!r}, {len(self)} rows)"


def concat(variables: Iterable[str], parts: Iterable[SolutionSequence], spill_threshold: int | None = None) -> SolutionSequence:
    """Multiset union of sequences, realigned to ``variables``."""
    variables = tuple(variables)

    def rows():
        for part in parts:
            if part.variables == variables:
                yield from part.rows()
            else:
                idx = [part.variables.index(v) if v in part.variables else None for v in variables]
                for row in part.rows():
                    yield tuple(None if i is None else row[i] for i in idx)

    return SolutionSequence(variables, rows(), spill_threshold)


def sequences_equal_as_sets(a: SolutionSequence, b: SolutionSequence) -> bool:
    return a.as_set() == b.as_set()


def sequences_equal_as_multisets(a: SolutionSequence, b: SolutionSequence) -> bool:
    return a.as_multiset() == b.as_multiset()


class Environment:
    """Current value of every solution variable assigned so far."""

    def __init__(self, bindings: Mapping[str, SolutionSequence] | None = None):
        self._bindings: dict[str, SolutionSequence] = dict(bindings or {})

    def __getitem__(self, name: str) -> SolutionSequence:
        try:
            return self._bindings[name]
        except KeyError:
            raise UnassignedVariable(name) from None

    def get(self, name: str, default=None):
        return self._bindings.get(name, default)

    def __contains__(self, name: str) -> bool:
        return name in self._bindings

    def assign(self, name: str, seq: SolutionSequence) -> None:
        self._bindings[name] = seq

    def names(self) -> list[str]:
        return list(self._bindings)

    def snapshot(self) -> "Environment":
        # sequences are immutable, so a shallow copy is a full snapshot
        return Environment(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __repr__(self) -> str:
        return f"Environment({self._bindings!r})"
