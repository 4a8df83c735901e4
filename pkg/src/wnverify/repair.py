"""Error correction: turn sense-level exceptions into CORRECT/ADD suggestions
and apply the accepted ones to the bitext and the lexicon.

For two aligned pairs ``(s_x, t_u)`` and ``(s_y, t_v)`` whose target senses
share synset ``P`` but whose source senses do not, every source sense lying
outside ``P`` is either re-annotated to ``(w(s), P)`` when its word is
already a member of ``P`` (CORRECT), or its word is added to ``P`` (ADD).
"""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from typing import Optional, Union

from .errors import ConflictUnresolved, PremiseViolation
from .ingest import AlignmentRecord
from .lexicon import Lemma, Lexicon, Sense
from .verify import (
    DIRECTIONS,
    AlignedPair,
    detect_sense_exceptions,
    enumerate_triples,
    enumerate_quads,
    source_sides,
)

CORRECT = "CORRECT"
ADD = "ADD"


@dataclass(frozen=True)
class CorrectionSuggestion:
    kind: str
    sent: Optional[str]
    side: str
    tok: Optional[int]
    from_sense: Sense
    to_synset: str
    support: int = 1

    @property
    def token(self) -> tuple:
        return (self.sent, self.side, self.tok)

    @property
    def lemma(self) -> Lemma:
        return self.from_sense.lemma

    @property
    def key(self) -> tuple:
        return (self.sent or "", self.side, -1 if self.tok is None else self.tok, self.to_synset, self.kind)


@dataclass
class RepairReport:
    correct: int = 0
    add: int = 0
    conflicts: list = field(default_factory=list)
    applied: int = 0
    skipped_low_support: int = 0
    skipped_add: int = 0
    lexicon_additions: int = 0

    @property
    def suggested(self) -> int:
        return self.correct + self.add

    def as_dict(self) -> dict:
        return {
            "suggestions": {"CORRECT": self.correct, "ADD": self.add},
            "conflicts": [
                {
                    "sent": token[0],
                    "side": token[1],
                    "tok": token[2],
                    "candidates": [
                        {"kind": s.kind, "to": s.to_synset, "support": s.support} for s in competing
                    ],
                }
                for token, competing in self.conflicts
            ],
            "applied": self.applied,
            "skipped_low_support": self.skipped_low_support,
            "skipped_add": self.skipped_add,
            "lexicon_additions": self.lexicon_additions,
        }


@dataclass(frozen=True)
class RepairPolicy:
    min_support: int = 1
    allow_add: bool = True
    conflict: str = "skip"  # or "highest_support"

    def __post_init__(self):
        if self.conflict not in ("skip", "highest_support"):
            raise ValueError(f"conflict policy must be 'skip' or 'highest_support', got {self.conflict!r}")
        if self.min_support < 1:
            raise ValueError("min_support must be at least 1")


def _as_pair(pair) -> AlignedPair:
    if isinstance(pair, AlignedPair):
        return pair
    src, tgt = pair
    return AlignedPair(src, tgt)


def suggest_corrections(pair_1, pair_2, lex: Lexicon, side: str = "src") -> list[CorrectionSuggestion]:
    """Apply the correction rule to two aligned pairs with synonymous targets.

    Pairs are :class:`AlignedPair` objects or ``(src, tgt)`` sense tuples.
    One suggestion is produced per supporting token of a diverging source
    sense; a pair without provenance yields a single token-less suggestion.
    ``side`` names the bitext side the source senses come from.
    """
    p1, p2 = _as_pair(pair_1), _as_pair(pair_2)
    if p1.tgt.synset != p2.tgt.synset:
        raise PremiseViolation(f"target senses {p1.tgt} and {p2.tgt} are not synonymous")
    if p1.src.synset == p2.src.synset:
        return []
    target = p1.tgt.synset
    synset = lex.synset(target)
    out = []
    for pair in (p1, p2):
        sense = pair.src
        if sense.synset == target:
            continue
        kind = CORRECT if synset.contains(sense.lemma) else ADD
        refs = pair.refs or (None,)
        for ref in refs:
            out.append(
                CorrectionSuggestion(
                    kind,
                    ref.sent if ref else None,
                    side,
                    ref.tok if ref else None,
                    sense,
                    target,
                )
            )
    return out


def run_repair(alignments: Sequence[AlignmentRecord], lex: Lexicon, direction: Union[str, Iterable[str]] = "st"):
    """Enumerate triples and quads, correct every exception and merge the
    suggestions by (token, target synset).  Support counts the distinct
    exceptions implying a suggestion."""
    directions = list(DIRECTIONS) if direction == "both" else [direction] if isinstance(direction, str) else list(direction)
    merged = {}
    for d in directions:
        side = source_sides(d)[0]
        instances = enumerate_triples(alignments, lex, d) + enumerate_quads(alignments, lex, d)
        for exc in detect_sense_exceptions(instances, lex):
            seen = set()
            for sugg in suggest_corrections(*exc.instance.pairs, lex, side=side):
                if sugg.key in seen:
                    continue
                seen.add(sugg.key)
                prev = merged.get(sugg.key)
                merged[sugg.key] = sugg if prev is None else replace(prev, support=prev.support + 1)
    suggestions = [merged[k] for k in sorted(merged)]
    report = RepairReport(
        correct=sum(s.kind == CORRECT for s in suggestions),
        add=sum(s.kind == ADD for s in suggestions),
        conflicts=find_conflicts(suggestions),
    )
    return suggestions, report


def find_conflicts(suggestions: Iterable[CorrectionSuggestion]) -> list:
    by_token = defaultdict(list)
    for s in suggestions:
        by_token[s.token].append(s)
    return [
        (token, sorted(group, key=lambda s: (s.to_synset, s.kind)))
        for token, group in sorted(by_token.items(), key=lambda kv: _token_sort(kv[0]))
        if len({s.to_synset for s in group}) > 1
    ]


def _token_sort(token):
    sent, side, tok = token
    return (sent or "", side, -1 if tok is None else tok)


def apply_corrections(
    alignments: Sequence[AlignmentRecord],
    lex: Lexicon,
    suggestions: Iterable[CorrectionSuggestion],
    policy: Optional[RepairPolicy] = None,
):
    """Apply suggestions under ``policy``; return ``(alignments', lex', report)``.

    Inputs are never modified.  CORRECT rewrites the token's synset; ADD
    first adds the token's lemma to the synset, then rewrites the token.
    Under the ``skip`` policy tokens with competing suggestions are left
    alone and :class:`ConflictUnresolved` is raised after everything else
    has been applied, carrying the partial result.
    """
    policy = policy or RepairPolicy()
    suggestions = list(suggestions)
    report = RepairReport(
        correct=sum(s.kind == CORRECT for s in suggestions),
        add=sum(s.kind == ADD for s in suggestions),
    )
    by_token = defaultdict(list)
    for s in suggestions:
        if s.support < policy.min_support:
            report.skipped_low_support += 1
            continue
        if s.kind == ADD and not policy.allow_add:
            report.skipped_add += 1
            continue
        by_token[s.token].append(s)

    chosen = {}
    for token in sorted(by_token, key=_token_sort):
        group = by_token[token]
        targets = {s.to_synset for s in group}
        if len(targets) == 1:
            chosen[token] = group[0]
            continue
        best = max(s.support for s in group)
        top = [s for s in group if s.support == best]
        if policy.conflict == "highest_support" and len({s.to_synset for s in top}) == 1:
            chosen[token] = top[0]
        else:
            report.conflicts.append((token, sorted(group, key=lambda s: (s.to_synset, s.kind))))

    new_lex = lex
    for s in chosen.values():
        if s.kind == ADD and not new_lex.synset(s.to_synset).contains(s.lemma):
            new_lex = new_lex.with_member(s.to_synset, s.lemma)
            report.lexicon_additions += 1

    out = []
    touched = set()
    for record in alignments:
        for side in ("src", "tgt"):
            s = chosen.get((record.sent, side, record.side(side).tok))
            if s is None:
                continue
            token = record.side(side)
            if token.lemma != s.lemma:
                continue
            if token.synsets != (s.to_synset,):
                record = record.with_side(side, token.annotated(s.to_synset))
            touched.add(s.token)
        out.append(record)
    report.applied = len(touched)

    if report.conflicts and policy.conflict == "skip":
        raise ConflictUnresolved(
            f"{len(report.conflicts)} token(s) have conflicting suggestions",
            alignments=out,
            lexicon=new_lex,
            report=report,
        )
    return out, new_lex, report


# ---------------------------------------------------------------------------
# serialization


def suggestion_to_record(s: CorrectionSuggestion) -> dict:
    return {
        "kind": s.kind,
        "sent": s.sent,
        "side": s.side,
        "tok": s.tok,
        "from": s.from_sense.synset,
        "to": s.to_synset,
        "lemma": s.lemma.form,
        "lang": s.lemma.lang,
        "pos": s.lemma.pos,
        "support": s.support,
    }


def suggestion_from_record(rec: dict) -> CorrectionSuggestion:
    lemma = Lemma(rec["lang"], rec["lemma"], rec["pos"])
    return CorrectionSuggestion(
        rec["kind"], rec["sent"], rec["side"], rec["tok"], Sense(lemma, rec["from"]), rec["to"], rec["support"]
    )
