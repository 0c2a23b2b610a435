"""Cover serialization, canonicalization, and the strict-equality comparator.

A cover is an ordered sequence of communities, each an ordered sequence
of node ids.  Two parallel schedules can emit the same set of communities
in different orders, so equality is only meaningful on the canonical
form: members sorted ascending, then communities sorted lexicographically
by their sorted member sequences (duplicates kept, multiset-style).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from .errors import DuplicateMember, MalformedLine

Cover = list[list[int]]


@dataclass(frozen=True)
class EqualityReport:
    equal: bool
    first_diff: str | None = None


def write_cover(cover: Cover, sink, labels: Sequence[int] | None = None) -> None:
    """One community per line, member ids TAB-separated, LF-terminated.

    ``labels`` (internal id -> external label) translates members on the
    way out; an empty cover writes an empty file.
    """
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            write_cover(cover, fh, labels)
        return
    for community in cover:
        members = community if labels is None else [labels[u] for u in community]
        sink.write("\t".join(str(u) for u in members) + "\n")


def read_cover(source) -> Cover:
    """Inverse of write_cover; preserves file order, skips blank lines.

    Raises MalformedLine on non-integer tokens and DuplicateMember when a
    line repeats a node.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_cover(fh)
    cover: Cover = []
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            members = [int(tok) for tok in line.split()]
        except ValueError:
            raise MalformedLine(line_no, f"non-integer member in {line!r}") from None
        if len(set(members)) != len(members):
            raise DuplicateMember(line_no, "community lists a node twice")
        cover.append(members)
    return cover


def canonicalize(cover: Cover) -> Cover:
    """Sort members ascending, then communities lexicographically.

    Idempotent, insensitive to any permutation of the outer or inner
    sequences, and keeps duplicate identical communities.
    """
    return sorted(sorted(community) for community in cover)


def compare_covers(a: Cover, b: Cover) -> EqualityReport:
    """Strict equality of canonical forms, with the first difference named."""
    ca = canonicalize(a)
    cb = canonicalize(b)
    for i, (x, y) in enumerate(zip(ca, cb)):
        if x != y:
            return EqualityReport(False, f"community #{i} in canonical order: {x} != {y}")
    if len(ca) != len(cb):
        return EqualityReport(
            False, f"community counts differ: {len(ca)} != {len(cb)}")
    return EqualityReport(True)
