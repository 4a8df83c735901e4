"""Immutable multilingual lexicon and the synonymy/translation predicates.

A :class:`Lexicon` is a collection of :class:`MultiSynset` objects plus the
inverse index from lemmas to the synsets that contain them.  Senses are
``(lemma, synset id)`` pairs, so "a sense belongs to exactly one synset"
and "the senses of a word sit in distinct synsets" hold by construction.
"""
from __future__ import annotations

import itertools
import unicodedata
from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Optional

from .errors import (
    DuplicateSense,
    DuplicateSynsetId,
    EmptySynset,
    LanguageMismatch,
    MemberGapConflict,
    NotNearSynonyms,
    SameLanguage,
    UnknownLemma,
)

POS_TAGS = ("n", "v", "a", "r")

MEMBER = "MEMBER"
GAP = "GAP"
UNCOVERED = "UNCOVERED"


def normalize_form(form: str) -> str:
    """NFC-normalize, case-fold and collapse internal whitespace."""
    form = unicodedata.normalize("NFC", form).casefold()
    return unicodedata.normalize("NFC", " ".join(form.split()))


def normalize_lang(lang: str) -> str:
    return lang.strip().lower()


@dataclass(frozen=True, order=True)
class Lemma:
    """A word (or non-compositional phrase) of one language and POS."""

    lang: str
    form: str
    pos: str

    def __post_init__(self):
        lang = normalize_lang(self.lang)
        form = normalize_form(self.form)
        if not lang:
            raise ValueError("lemma language must be non-empty")
        if not form:
            raise ValueError("lemma form must be non-empty")
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown part of speech {self.pos!r}")
        object.__setattr__(self, "lang", lang)
        object.__setattr__(self, "form", form)

    def __str__(self):
        return f"{self.form}#{self.pos}@{self.lang}"


@dataclass(frozen=True, order=True)
class Sense:
    """A (lemma, synset) pair.  Two senses are synonymous iff they share a synset."""

    lemma: Lemma
    synset: str

    def __str__(self):
        return f"{self.lemma}/{self.synset}"


def senses_synonymous(s_x: Sense, s_y: Sense) -> bool:
    return s_x.synset == s_y.synset


@dataclass(frozen=True, eq=True)
class MultiSynset:
    """One multilingual synset.

    ``members`` maps a language code to the lemma forms lexicalizing the
    concept in that language; ``gaps`` lists languages where the concept is
    explicitly unlexicalized.  Forms are normalized on construction, and a
    form repeated within one language is rejected (it would be the same
    sense listed twice).
    """

    id: str
    pos: str
    members: Mapping[str, frozenset] = field(default_factory=dict)
    gaps: frozenset = frozenset()

    def __post_init__(self):
        if not self.id:
            raise EmptySynset("synset id must be non-empty", self.id)
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown part of speech {self.pos!r}")
        members = {}
        for lang, forms in self.members.items():
            lang = normalize_lang(lang)
            normalized = [normalize_form(f) for f in forms]
            if any(not f for f in normalized):
                raise EmptySynset(f"synset {self.id}: empty form in {lang!r}", self.id)
            if not normalized:
                raise EmptySynset(f"synset {self.id}: empty member list for {lang!r}", self.id)
            if len(set(normalized)) != len(normalized):
                dupes = sorted({f for f in normalized if normalized.count(f) > 1})
                raise DuplicateSense(
                    f"synset {self.id}: form(s) {', '.join(dupes)} listed twice in {lang!r}",
                    self.id,
                )
            if lang in members:
                raise DuplicateSense(f"synset {self.id}: language {lang!r} listed twice", self.id)
            members[lang] = frozenset(normalized)
        if not members:
            raise EmptySynset(f"synset {self.id} has no members in any language", self.id)
        gaps = frozenset(normalize_lang(g) for g in self.gaps)
        clash = gaps & members.keys()
        if clash:
            raise MemberGapConflict(
                f"synset {self.id}: language(s) {', '.join(sorted(clash))} both lexicalized and gapped",
                self.id,
            )
        object.__setattr__(self, "members", MappingProxyType(dict(sorted(members.items()))))
        object.__setattr__(self, "gaps", gaps)

    def __hash__(self):
        return hash(self.id)

    def __reduce__(self):
        return (MultiSynset, (self.id, self.pos, {l: sorted(f) for l, f in self.members.items()}, self.gaps))

    @property
    def languages(self) -> frozenset:
        return frozenset(self.members)

    def lemmas(self, lang: Optional[str] = None) -> list[Lemma]:
        langs = [lang] if lang is not None else list(self.members)
        return [
            Lemma(l, form, self.pos)
            for l in langs
            for form in sorted(self.members.get(l, ()))
        ]

    def contains(self, lemma: Lemma) -> bool:
        return lemma.pos == self.pos and lemma.form in self.members.get(lemma.lang, ())

    def coverage(self, lang: str) -> str:
        if lang in self.members:
            return MEMBER
        if lang in self.gaps:
            return GAP
        return UNCOVERED


@dataclass(frozen=True)
class Witness:
    """Coverage of one shared synset in a target language."""

    synset: str
    status: str
    lemmas: tuple = ()

    @property
    def lemma(self) -> Optional[Lemma]:
        return self.lemmas[0] if self.lemmas else None


class Lexicon:
    """A multi-wordnet: synsets keyed by id plus the lemma → synset index.

    Instances are immutable; "modifying" methods return new lexicons.
    """

    __slots__ = ("_synsets", "_index")

    def __init__(self, synsets: Iterable[MultiSynset] = ()):
        table = {}
        for synset in synsets:
            if synset.id in table:
                raise DuplicateSynsetId(f"duplicate synset id {synset.id!r}", synset.id)
            table[synset.id] = synset
        self._synsets = MappingProxyType(dict(sorted(table.items())))
        self._index = MappingProxyType(_invert(self._synsets.values()))

    # container protocol

    def __len__(self):
        return len(self._synsets)

    def __iter__(self) -> Iterator[MultiSynset]:
        return iter(self._synsets.values())

    def __contains__(self, synset_id) -> bool:
        return synset_id in self._synsets

    def __eq__(self, other):
        if not isinstance(other, Lexicon):
            return NotImplemented
        return self._synsets == other._synsets

    # immutable: copies may share, pickles rebuild the index

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (Lexicon, (list(self._synsets.values()),))

    def __repr__(self):
        return f"Lexicon({len(self._synsets)} synsets, {len(self._index)} lemmas)"

    @property
    def synsets(self) -> Mapping[str, MultiSynset]:
        return self._synsets

    @property
    def index(self) -> Mapping[Lemma, tuple]:
        return self._index

    def synset(self, synset_id: str) -> MultiSynset:
        return self._synsets[synset_id]

    @property
    def languages(self) -> list[str]:
        langs = set()
        for synset in self:
            langs.update(synset.members)
            langs.update(synset.gaps)
        return sorted(langs)

    def lemmas(self, lang: Optional[str] = None) -> list[Lemma]:
        return sorted(l for l in self._index if lang is None or l.lang == lang)

    # word-level queries

    def synsets_of(self, lemma: Lemma) -> tuple:
        return self._index.get(lemma, ())

    def senses(self, lemma: Lemma) -> tuple:
        return tuple(Sense(lemma, sid) for sid in self.synsets_of(lemma))

    def has_sense(self, sense: Sense) -> bool:
        synset = self._synsets.get(sense.synset)
        return synset is not None and synset.contains(sense.lemma)

    def _known(self, lemma: Lemma) -> tuple:
        ids = self._index.get(lemma)
        if ids is None:
            raise UnknownLemma(f"{lemma} is not in the lexicon")
        return ids

    def is_monosemous(self, lemma: Lemma) -> bool:
        return len(self._known(lemma)) == 1

    def is_polysemous(self, lemma: Lemma) -> bool:
        return len(self._known(lemma)) >= 2

    def near_synonyms(self, a: Lemma, b: Lemma) -> bool:
        _same_language(a, b)
        return not set(self.synsets_of(a)).isdisjoint(self.synsets_of(b))

    def absolute_synonyms(self, a: Lemma, b: Lemma) -> bool:
        _same_language(a, b)
        return self._known(a) == self._known(b)

    def translations(self, lemma: Lemma, lang: str) -> frozenset:
        """Lemmas of ``lang`` sharing at least one synset with ``lemma``."""
        out = set()
        for sid in self.synsets_of(lemma):
            out.update(self._synsets[sid].lemmas(lang))
        return frozenset(out)

    # pair enumeration

    def _buckets(self, lang: str) -> dict:
        buckets = defaultdict(list)
        for lemma, ids in self._index.items():
            if lemma.lang == lang:
                buckets[ids].append(lemma)
        return buckets

    def absolute_synonym_pairs(self, lang: str) -> list[tuple[Lemma, Lemma]]:
        """All unordered same-language pairs with identical synset sets."""
        lang = normalize_lang(lang)
        pairs = []
        for group in self._buckets(lang).values():
            pairs.extend(itertools.combinations(sorted(group), 2))
        return sorted(pairs)

    def absolute_translation_pairs(self, lang_e: str, lang_f: str) -> list[tuple[Lemma, Lemma]]:
        """All (E lemma, F lemma) pairs that appear in exactly the same synsets."""
        lang_e, lang_f = normalize_lang(lang_e), normalize_lang(lang_f)
        if lang_e == lang_f:
            raise SameLanguage(f"both languages are {lang_e!r}")
        left = self._buckets(lang_e)
        right = self._buckets(lang_f)
        pairs = []
        for key, group in left.items():
            if key in right:
                pairs.extend(itertools.product(sorted(group), sorted(right[key])))
        return sorted(pairs)

    def shared_translation_witness(self, a: Lemma, b: Lemma, target: str) -> list[Witness]:
        """For each synset shared by near-synonyms ``a`` and ``b``, report how
        ``target`` covers it: member lemmas, an explicit gap, or nothing."""
        if not self.near_synonyms(a, b):
            raise NotNearSynonyms(f"{a} and {b} share no synset")
        target = normalize_lang(target)
        shared = sorted(set(self.synsets_of(a)) & set(self.synsets_of(b)))
        report = []
        for sid in shared:
            synset = self._synsets[sid]
            status = synset.coverage(target)
            lemmas = tuple(synset.lemmas(target)) if status == MEMBER else ()
            report.append(Witness(sid, status, lemmas))
        return report

    # derived lexicons

    def restrict_to_language(self, lang: str) -> "Lexicon":
        lang = normalize_lang(lang)
        return Lexicon(
            MultiSynset(s.id, s.pos, {lang: s.members[lang]})
            for s in self
            if lang in s.members
        )

    def with_member(self, synset_id: str, lemma: Lemma) -> "Lexicon":
        """Return a copy where ``lemma`` has been added to ``synset_id``.

        A gap marker for the lemma's language is dropped, since the concept
        is now lexicalized there.
        """
        synset = self._synsets[synset_id]
        if synset.contains(lemma):
            return self
        if lemma.pos != synset.pos:
            raise LanguageMismatch(f"cannot add {lemma} to {synset.pos} synset {synset_id}")
        members = {l: set(forms) for l, forms in synset.members.items()}
        members.setdefault(lemma.lang, set()).add(lemma.form)
        replaced = MultiSynset(synset.id, synset.pos, members, synset.gaps - {lemma.lang})
        return Lexicon(replaced if s.id == synset_id else s for s in self)

    def check_index(self) -> bool:
        """Rebuild the inverse index from synset membership and compare."""
        rebuilt = {}
        for synset in self:
            for lemma in synset.lemmas():
                rebuilt.setdefault(lemma, []).append(synset.id)
        rebuilt = {k: tuple(sorted(v)) for k, v in rebuilt.items()}
        return rebuilt == dict(self._index)


def build_lexicon(records: Iterable[MultiSynset]) -> Lexicon:
    return Lexicon(records)


def _invert(synsets: Iterable[MultiSynset]) -> dict:
    index = defaultdict(list)
    for synset in synsets:
        for lemma in synset.lemmas():
            index[lemma].append(synset.id)
    return {lemma: tuple(sorted(ids)) for lemma, ids in sorted(index.items())}


def _same_language(a: Lemma, b: Lemma):
    if a.lang != b.lang:
        raise LanguageMismatch(f"{a} and {b} belong to different languages")
