"""Input validation helpers shared by the estimators and the CLI."""
from __future__ import annotations

from collections.abc import Iterable

from .errors import UnresolvedSynset
from .ingest import AlignmentRecord
from .lexicon import Lexicon, MultiSynset
from .verify import DIRECTIONS, MODES


def check_lexicon(lexicon) -> Lexicon:
    """Return ``lexicon`` as a :class:`Lexicon`, building it from synsets if needed."""
    if isinstance(lexicon, Lexicon):
        return lexicon
    if lexicon is None:
        raise ValueError("a lexicon is required")
    items = list(lexicon)
    if not all(isinstance(s, MultiSynset) for s in items):
        raise TypeError("expected a Lexicon or an iterable of MultiSynset")
    return Lexicon(items)


def check_alignments(X, lexicon: Lexicon = None, resolved: bool = False) -> list[AlignmentRecord]:
    """Validate an alignment collection.

    With ``resolved=True`` every token must carry exactly one synset id
    known to ``lexicon``.
    """
    if isinstance(X, (str, bytes)):
        raise TypeError("expected a sequence of AlignmentRecord, not a string; parse the file first")
    records = list(X)
    for r in records:
        if not isinstance(r, AlignmentRecord):
            raise TypeError(f"expected AlignmentRecord, got {type(r).__name__}")
    if resolved:
        for r in records:
            for token in (r.src, r.tgt):
                if token.synset is None:
                    raise ValueError(f"sentence {r.sent}: token {token.tok} is not singly annotated")
                if lexicon is not None and token.synset not in lexicon:
                    raise UnresolvedSynset(f"sentence {r.sent}: unknown synset {token.synset!r}")
    return records


def check_directions(direction) -> list[str]:
    if direction == "both":
        return list(DIRECTIONS)
    directions = [direction] if isinstance(direction, str) else list(direction)
    bad = [d for d in directions if d not in DIRECTIONS]
    if bad or not directions:
        raise ValueError(f"direction must be 'st', 'ts' or 'both', got {direction!r}")
    return directions


def check_modes(mode) -> list[str]:
    if mode == "all":
        return list(MODES)
    modes = [mode] if isinstance(mode, str) else list(mode)
    bad = [m for m in modes if m not in MODES]
    if bad or not modes:
        raise ValueError(f"mode must be one of {', '.join(MODES)} or 'all', got {mode!r}")
    return modes


def split_resolvable(records: Iterable[AlignmentRecord], lexicon: Lexicon):
    """Partition records into those whose synset ids all exist in ``lexicon`` and the rest."""
    ok, unknown = [], []
    for r in records:
        (ok if r.src.synset in lexicon and r.tgt.synset in lexicon else unknown).append(r)
    return ok, unknown
