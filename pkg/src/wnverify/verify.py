"""Theorem-premise enumeration and exception detection over an aligned bitext.

Sense-level checks
    *triples*: two distinct source senses aligned to one target sense must
    be synonymous; *quads*: two distinct source senses aligned to two
    distinct but synonymous target senses must be synonymous.
Word-level check
    two source words aligned to one target word must be near-synonyms, or
    the target word must be polysemous.
Consistency check
    every aligned pair must share a synset, and every annotated lemma must
    be a member of its synset.

Every check runs in a *direction*: ``"st"`` reads the file's ``src`` side as
the source language, ``"ts"`` swaps the sides.
"""
from __future__ import annotations

import itertools
import random
from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import MissingSentence, UnresolvedSynset
from .ingest import AlignmentRecord, Sentence, Token
from .lexicon import Lemma, Lexicon, Sense

DIRECTIONS = ("st", "ts")
MODES = ("triples", "quads", "word", "consistency")

TRIPLE = "TRIPLE"
QUAD = "QUAD"
WORD = "WORD"
CONSISTENCY = "CONSISTENCY"


@dataclass(frozen=True, order=True)
class Ref:
    """Provenance of one alignment link, seen from the source side.

    ``tok`` indexes the source token and ``aligned`` the target token it is
    linked to, both within sentence ``sent``.
    """

    sent: str
    tok: int
    aligned: int

    def tokens(self, direction: str) -> tuple:
        src, tgt = source_sides(direction)
        return (self.sent, src, self.tok), (self.sent, tgt, self.aligned)


@dataclass(frozen=True, order=True)
class AlignedPair:
    src: Sense
    tgt: Sense
    refs: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class TripleInstance:
    src_a: Sense
    src_b: Sense
    tgt: Sense
    support_a: tuple = ()
    support_b: tuple = ()
    direction: str = "st"

    @property
    def key(self):
        return (self.src_a, self.src_b, self.tgt)

    @property
    def pairs(self) -> tuple:
        return AlignedPair(self.src_a, self.tgt, self.support_a), AlignedPair(self.src_b, self.tgt, self.support_b)

    @property
    def support(self) -> tuple:
        return tuple(sorted(set(self.support_a) | set(self.support_b)))

    @property
    def senses(self) -> tuple:
        return (self.src_a, self.src_b, self.tgt)


@dataclass(frozen=True)
class QuadInstance:
    pair_1: AlignedPair
    pair_2: AlignedPair
    direction: str = "st"

    @property
    def key(self):
        return (self.pair_1.src, self.pair_1.tgt, self.pair_2.src, self.pair_2.tgt)

    @property
    def pairs(self) -> tuple:
        return self.pair_1, self.pair_2

    @property
    def support(self) -> tuple:
        return tuple(sorted(set(self.pair_1.refs) | set(self.pair_2.refs)))

    @property
    def senses(self) -> tuple:
        return self.key


@dataclass(frozen=True)
class WordTriple:
    e_x: Lemma
    e_y: Lemma
    f_z: Lemma
    f_polysemous: bool
    e_near_synonyms: bool
    support: tuple = ()
    direction: str = "st"

    @property
    def key(self):
        return (self.e_x, self.e_y, self.f_z)

    @property
    def category(self) -> str:
        if self.f_polysemous and self.e_near_synonyms:
            return "both"
        if self.f_polysemous:
            return "polysemy_only"
        if self.e_near_synonyms:
            return "synonymy_only"
        return "neither"


@dataclass(frozen=True)
class ExceptionRecord:
    kind: str
    instance: object
    direction: str = "st"
    detail: Optional[str] = None

    @property
    def provenance(self) -> tuple:
        return self.instance.support

    @property
    def key(self):
        return (self.kind, self.direction, self.detail or "", self.instance.key)


@dataclass(frozen=True)
class ConsistencyInstance:
    pair: AlignedPair

    @property
    def key(self):
        return (self.pair.src, self.pair.tgt)

    @property
    def support(self) -> tuple:
        return self.pair.refs

    @property
    def senses(self) -> tuple:
        return (self.pair.src, self.pair.tgt)


@dataclass
class WordTheoremReport:
    triples: list
    exceptions: list
    direction: str = "st"

    def counts(self) -> dict:
        cats = {"polysemy_only": 0, "synonymy_only": 0, "both": 0, "neither": 0}
        for triple in self.triples:
            cats[triple.category] += 1
        return {
            "instances": len(self.triples),
            "f_polysemous": cats["polysemy_only"] + cats["both"],
            "e_near_synonyms": cats["synonymy_only"] + cats["both"],
            **cats,
            "exceptions": len(self.exceptions),
        }


@dataclass
class VerificationReport:
    """Instance and exception counts per check and direction."""

    checks: dict = field(default_factory=dict)

    def add(self, mode: str, direction: str, counts: dict) -> None:
        self.checks.setdefault(mode, {})[direction] = counts

    @property
    def total_exceptions(self) -> int:
        return sum(c["exceptions"] for per in self.checks.values() for c in per.values())

    def as_dict(self) -> dict:
        return {"checks": self.checks, "total_exceptions": self.total_exceptions}


def source_sides(direction: str) -> tuple:
    if direction == "st":
        return "src", "tgt"
    if direction == "ts":
        return "tgt", "src"
    raise ValueError(f"direction must be 'st' or 'ts', got {direction!r}")


def _oriented(alignments: Iterable[AlignmentRecord], lex: Lexicon, direction: str):
    src_side, tgt_side = source_sides(direction)
    for record in alignments:
        src, tgt = record.side(src_side), record.side(tgt_side)
        for token in (src, tgt):
            if token.synset is None:
                raise ValueError(
                    f"sentence {record.sent}: token {token.tok} needs exactly one synset; filter first"
                )
            if token.synset not in lex:
                raise UnresolvedSynset(f"sentence {record.sent}: synset {token.synset!r} is not in the lexicon")
        yield src, tgt, Ref(record.sent, src.tok, tgt.tok)


def _refs(refs) -> tuple:
    return tuple(sorted(set(refs)))


def enumerate_triples(alignments, lex: Lexicon, direction: str = "st") -> list[TripleInstance]:
    """Pairs of distinct source senses aligned to one identical target sense."""
    groups = defaultdict(lambda: defaultdict(list))
    for src, tgt, ref in _oriented(alignments, lex, direction):
        groups[tgt.sense][src.sense].append(ref)
    out = []
    for tgt in sorted(groups):
        sources = groups[tgt]
        for a, b in itertools.combinations(sorted(sources), 2):
            out.append(TripleInstance(a, b, tgt, _refs(sources[a]), _refs(sources[b]), direction))
    return out


def enumerate_quads(alignments, lex: Lexicon, direction: str = "st") -> list[QuadInstance]:
    """Pairs of distinct source senses aligned to distinct synonymous target senses."""
    groups = defaultdict(lambda: defaultdict(list))
    for src, tgt, ref in _oriented(alignments, lex, direction):
        groups[tgt.synset][(src.sense, tgt.sense)].append(ref)
    out = []
    for synset in sorted(groups):
        links = groups[synset]
        for (s1, t1), (s2, t2) in itertools.combinations(sorted(links), 2):
            if t1 == t2 or s1 == s2:
                continue
            out.append(
                QuadInstance(
                    AlignedPair(s1, t1, _refs(links[(s1, t1)])),
                    AlignedPair(s2, t2, _refs(links[(s2, t2)])),
                    direction,
                )
            )
    return out


def _source_senses(instance):
    if isinstance(instance, TripleInstance):
        return instance.src_a, instance.src_b
    return instance.pair_1.src, instance.pair_2.src


# interface names
enumerate_cor1_triples = enumerate_triples
enumerate_thm1_quads = enumerate_quads


def detect_sense_exceptions(instances: Iterable, lex: Optional[Lexicon] = None) -> list[ExceptionRecord]:
    """Keep the triple/quad instances whose two source senses are not synonymous."""
    out = []
    for inst in instances:
        a, b = _source_senses(inst)
        if a.synset != b.synset:
            kind = TRIPLE if isinstance(inst, TripleInstance) else QUAD
            out.append(ExceptionRecord(kind, inst, inst.direction))
    return out


def check_word_theorem(alignments, lex: Lexicon, direction: str = "st") -> WordTheoremReport:
    """Classify every (e_x, e_y, f_z) word triple by polysemy of f_z and
    near-synonymy of the e-words; triples with neither are exceptions."""
    groups = defaultdict(lambda: defaultdict(list))
    src_lang = None
    for src, tgt, ref in _oriented(alignments, lex, direction):
        groups[tgt.lemma][src.lemma].append(ref)
        src_lang = src.lang
    # source-language synonymy is judged on the monolingual restriction
    mono = lex.restrict_to_language(src_lang) if src_lang else lex
    triples, exceptions = [], []
    for f in sorted(groups):
        sources = groups[f]
        f_poly = len(lex.synsets_of(f)) >= 2
        for e_x, e_y in itertools.combinations(sorted(sources), 2):
            near = e_x.lang == e_y.lang and mono.near_synonyms(e_x, e_y)
            triple = WordTriple(e_x, e_y, f, f_poly, near, _refs(sources[e_x] + sources[e_y]), direction)
            triples.append(triple)
            if not (f_poly or near):
                exceptions.append(ExceptionRecord(WORD, triple, direction))
    return WordTheoremReport(triples, exceptions, direction)


def check_alignment_consistency(alignments, lex: Lexicon) -> list[ExceptionRecord]:
    """Flag aligned sense pairs from different synsets (MISMATCH) and
    annotations naming a synset that lacks the lemma (MEMBERSHIP)."""
    pairs = defaultdict(list)
    for record in alignments:
        if record.src.synset is None or record.tgt.synset is None:
            continue
        pairs[(record.src.sense, record.tgt.sense)].append(Ref(record.sent, record.src.tok, record.tgt.tok))
    out = []
    for (src, tgt), refs in sorted(pairs.items()):
        inst = ConsistencyInstance(AlignedPair(src, tgt, _refs(refs)))
        if src.synset != tgt.synset:
            out.append(ExceptionRecord(CONSISTENCY, inst, "st", "MISMATCH"))
        for side, sense in (("src", src), ("tgt", tgt)):
            if not lex.has_sense(sense):
                out.append(ExceptionRecord(CONSISTENCY, inst, "st", f"MEMBERSHIP:{side}"))
    return out


def run_checks(
    alignments: Sequence[AlignmentRecord],
    lex: Lexicon,
    modes: Iterable[str] = MODES,
    directions: Iterable[str] = DIRECTIONS,
):
    """Run the selected checks; return ``(exceptions, VerificationReport)``."""
    modes, directions = list(modes), list(directions)
    unknown = set(modes) - set(MODES)
    if unknown:
        raise ValueError(f"unknown mode(s): {', '.join(sorted(unknown))}")
    exceptions, report = [], VerificationReport()
    for mode in MODES:
        if mode not in modes:
            continue
        if mode == "consistency":
            found = check_alignment_consistency(alignments, lex)
            report.add(mode, "st", {"instances": len(alignments), "exceptions": len(found)})
            exceptions.extend(found)
            continue
        for direction in directions:
            if mode == "word":
                word = check_word_theorem(alignments, lex, direction)
                found = word.exceptions
                report.add(mode, direction, word.counts())
            else:
                enumerate_ = enumerate_triples if mode == "triples" else enumerate_quads
                instances = enumerate_(alignments, lex, direction)
                found = detect_sense_exceptions(instances, lex)
                report.add(mode, direction, {"instances": len(instances), "exceptions": len(found)})
            exceptions.extend(found)
    return exceptions, report


# ---------------------------------------------------------------------------
# serialization


def _sense_record(sense: Sense) -> dict:
    l = sense.lemma
    return {"lang": l.lang, "lemma": l.form, "pos": l.pos, "synset": sense.synset}


def _lemma_record(lemma: Lemma) -> dict:
    return {"lang": lemma.lang, "lemma": lemma.form, "pos": lemma.pos}


def exception_to_record(exc: ExceptionRecord) -> dict:
    inst = exc.instance
    if exc.kind == WORD:
        senses = [_lemma_record(l) for l in (inst.e_x, inst.e_y, inst.f_z)]
    else:
        senses = [_sense_record(s) for s in inst.senses]
    rec = {"kind": exc.kind, "direction": exc.direction, "senses": senses}
    if exc.detail:
        rec["detail"] = exc.detail
    rec["support"] = [{"sent": r.sent, "tok": r.tok, "aligned": r.aligned} for r in exc.provenance]
    return rec


def exception_tokens(record: dict) -> set:
    """Token coordinates ``(sent, side, tok)`` touched by an exception record."""
    src, tgt = source_sides(record["direction"])
    out = set()
    for ref in record["support"]:
        out.add((ref["sent"], src, ref["tok"]))
        if "aligned" in ref:
            out.add((ref["sent"], tgt, ref["aligned"]))
    return out


# ---------------------------------------------------------------------------
# substitution-test candidates


@dataclass(frozen=True)
class SubstitutionPair:
    sent: str
    lang: str
    tok: int
    original: str
    modified: str
    replaced: Lemma
    replacement: Lemma


def generate_substitution_candidates(
    exceptions: Iterable[ExceptionRecord],
    sentences: Union[Iterable[Sentence], dict],
    lex: Lexicon,
    seed: int = 0,
    inflect: Optional[Callable[[str, str], str]] = None,
) -> list[SubstitutionPair]:
    """Build (original, modified) sentence pairs for triple exceptions.

    An exception qualifies when exactly one of its two source senses has a
    synset that also contains the other source word.  That sense's word is
    replaced by the other word in one of its supporting sentences, chosen
    with a seeded RNG.  ``inflect(surface, lemma)`` can re-inflect the
    replacement; by default the bare lemma form is inserted.
    """
    if not isinstance(sentences, dict):
        sentences = {(s.sent, s.lang): s for s in sentences}
    rng = random.Random(seed)
    out = []
    for exc in exceptions:
        if exc.kind != TRIPLE:
            continue
        inst = exc.instance
        a, b = inst.src_a, inst.src_b
        a_holds_b = inst.src_b.lemma in _members(lex, a.synset)
        b_holds_a = inst.src_a.lemma in _members(lex, b.synset)
        if a_holds_b == b_holds_a:
            continue
        if a_holds_b:
            sense, other, refs = a, b, inst.support_a
        else:
            sense, other, refs = b, a, inst.support_b
        candidates = sorted({(r.sent, r.tok) for r in refs})
        sent_id, tok = candidates[rng.randrange(len(candidates))]
        sentence = sentences.get((sent_id, sense.lemma.lang))
        if sentence is None or tok >= len(sentence.tokens):
            raise MissingSentence(f"no {sense.lemma.lang} sentence {sent_id!r} covering token {tok}")
        surface = sentence.tokens[tok]
        word = inflect(surface, other.lemma.form) if inflect else other.lemma.form
        modified = list(sentence.tokens)
        modified[tok] = word
        out.append(
            SubstitutionPair(
                sent_id, sentence.lang, tok, " ".join(sentence.tokens), " ".join(modified), sense.lemma, other.lemma
            )
        )
    return out


def _members(lex: Lexicon, synset_id: str) -> set:
    if synset_id not in lex:
        return set()
    return set(lex.synset(synset_id).lemmas())
