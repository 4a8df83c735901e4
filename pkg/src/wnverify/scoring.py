"""Oracle scoring of detection and repair against a :class:`TruthLog`."""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass
from typing import Optional

from .ingest import AlignmentRecord
from .repair import ADD, CorrectionSuggestion
from .synthgen import REANNOTATE, TruthEntry
from .verify import ExceptionRecord, exception_to_record, exception_tokens, source_sides


@dataclass
class Score:
    precision: Optional[float] = None
    recall: Optional[float] = None
    accuracy: Optional[float] = None
    flagged: Optional[int] = None
    flagged_injected: Optional[int] = None
    detectable: Optional[int] = None
    detected: Optional[int] = None
    suggestions: Optional[int] = None
    matched: Optional[int] = None
    correct: Optional[int] = None

    def as_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _as_record(exc) -> dict:
    return exception_to_record(exc) if isinstance(exc, ExceptionRecord) else exc


def score_detection(
    exceptions: Iterable, truth: Iterable[TruthEntry], detectable: Optional[Iterable[TruthEntry]] = None
) -> Score:
    """Precision over flagged exceptions, recall over detectable injected errors.

    An exception counts as a true flag when one of its supporting tokens
    was corrupted.  ``detectable`` defaults to every truth entry.  Empty
    denominators score 1.
    """
    truth = list(truth)
    injected = {e.token for e in truth}
    targets = list(truth if detectable is None else detectable)
    flagged_tokens = set()
    flagged = hits = 0
    for exc in exceptions:
        tokens = exception_tokens(_as_record(exc))
        flagged += 1
        hits += bool(tokens & injected)
        flagged_tokens |= tokens
    detected = sum(e.token in flagged_tokens for e in targets)
    return Score(
        precision=hits / flagged if flagged else 1.0,
        recall=detected / len(targets) if targets else 1.0,
        flagged=flagged,
        flagged_injected=hits,
        detectable=len(targets),
        detected=detected,
    )


def score_correction(suggestions: Iterable[CorrectionSuggestion], truth: Iterable[TruthEntry]) -> Score:
    """Fraction of truth-matched suggestions that restore the true synset.

    An ADD for a token whose truth is a re-annotation is wrong even if it
    names the right synset: the word was already a member there.
    """
    by_token = {e.token: e for e in truth}
    suggestions = list(suggestions)
    matched = correct = 0
    for s in suggestions:
        entry = by_token.get(s.token)
        if entry is None:
            continue
        matched += 1
        if s.to_synset == entry.true and not (s.kind == ADD and entry.type == REANNOTATE):
            correct += 1
    return Score(
        accuracy=correct / matched if matched else 1.0,
        suggestions=len(suggestions),
        matched=matched,
        correct=correct,
    )


def detectability_census(
    alignments: Sequence[AlignmentRecord],
    truth: Iterable[TruthEntry],
    modes: Iterable[str] = ("triples", "quads"),
    directions: Iterable[str] = ("st", "ts"),
) -> list[TruthEntry]:
    """Brute-force list of injected errors that form at least one premise
    together with an uncorrupted link.

    Each corrupted link is compared against every clean link; a triple
    premise needs equal target senses, a quad premise distinct target
    senses of one synset, a word premise equal target lemmas, and all of
    them distinct source items.  The consistency premise is a single link,
    so every error is detectable under that mode.
    """
    truth = list(truth)
    modes, directions = set(modes), list(directions)
    by_token = defaultdict(list)
    for idx, r in enumerate(alignments):
        by_token[(r.sent, "src", r.src.tok)].append(idx)
        by_token[(r.sent, "tgt", r.tgt.tok)].append(idx)
    corrupted = {idx for e in truth for idx in by_token.get(e.token, ())}
    clean = [r for idx, r in enumerate(alignments) if idx not in corrupted]

    def keys(record, direction):
        s, t = source_sides(direction)
        a, b = record.side(s), record.side(t)
        src_word, tgt_word = (a.lang, a.form, a.pos), (b.lang, b.form, b.pos)
        return src_word + (a.synset,), tgt_word + (b.synset,), b.synset, src_word, tgt_word

    clean_keys = {d: [keys(r, d) for r in clean] for d in directions}

    def premise(k1, k2):
        src1, tgt1, syn1, sw1, tw1 = k1
        src2, tgt2, syn2, sw2, tw2 = k2
        if "triples" in modes and tgt1 == tgt2 and src1 != src2:
            return True
        if "quads" in modes and tgt1 != tgt2 and syn1 == syn2 and src1 != src2:
            return True
        if "word" in modes and tw1 == tw2 and sw1 != sw2:
            return True
        return False

    out = []
    for entry in truth:
        if "consistency" in modes:
            out.append(entry)
            continue
        found = False
        for idx in by_token.get(entry.token, ()):
            for d in directions:
                k1 = keys(alignments[idx], d)
                if any(premise(k1, k2) for k2 in clean_keys[d]):
                    found = True
                    break
            if found:
                break
        if found:
            out.append(entry)
    return out
