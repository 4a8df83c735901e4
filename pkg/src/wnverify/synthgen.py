"""Seeded synthetic lexicons and sense-annotated bitexts with error injection.

Clean bitexts draw both sides of every link from one bilingual synset, so
they satisfy every check in :mod:`wnverify.verify` by construction.
:func:`inject_errors` then corrupts a controlled fraction of the links and
records each corruption in a :class:`TruthLog`.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Union

import numpy as np

from .errors import InsufficientLexicalization, InvalidConfig
from .ingest import AlignmentRecord, Sentence, Token, _numbered_lines, _write
from .lexicon import POS_TAGS, Lexicon, MultiSynset, normalize_lang

POS_WEIGHTS = (0.55, 0.2, 0.15, 0.1)

REANNOTATE = "reannotate"
MISALIGN = "misalign"


@dataclass
class GenConfig:
    """Generator settings.

    ``gap_rate`` is a probability per (synset, non-anchor language), either
    one float or a ``{lang: rate}`` mapping.  The first language is the
    anchor and is never gapped.  ``synonym_rate`` is the mean number of
    member forms per synset and language, ``polysemy_shape`` the Zipf
    exponent of senses per word.
    """

    seed: int = 0
    n_synsets: int = 1000
    languages: Sequence[str] = ("en", "it")
    gap_rate: Union[float, Mapping[str, float]] = 0.1
    synonym_rate: float = 1.5
    polysemy_shape: float = 2.0
    max_senses: int = 8
    n_alignments: int = 10000
    sentence_length: int = 12
    err_reannotate: float = 0.0
    err_misalign: float = 0.0
    corrupt_side: str = "src"
    isolated: bool = False

    def __post_init__(self):
        self.languages = tuple(normalize_lang(l) for l in self.languages)
        self.validate()

    def validate(self) -> None:
        def bad(msg):
            raise InvalidConfig(msg)

        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            bad("seed must be a non-negative integer")
        if not isinstance(self.n_synsets, int) or self.n_synsets < 1:
            bad("n_synsets must be at least 1")
        if len(self.languages) < 2 or len(set(self.languages)) != len(self.languages):
            bad("at least 2 distinct languages are required")
        rates = self.gap_rate.values() if isinstance(self.gap_rate, Mapping) else [self.gap_rate]
        for name, value in [("gap_rate", r) for r in rates] + [
            ("err_reannotate", self.err_reannotate),
            ("err_misalign", self.err_misalign),
        ]:
            if not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
                bad(f"{name} must be a probability in [0, 1]")
        if self.synonym_rate < 1.0:
            bad("synonym_rate is a mean member count and must be >= 1")
        if self.polysemy_shape <= 1.0:
            bad("polysemy_shape must be > 1")
        if self.max_senses < 1:
            bad("max_senses must be at least 1")
        if self.n_alignments < 0:
            bad("n_alignments must be non-negative")
        if self.sentence_length < 1:
            bad("sentence_length must be at least 1")
        if self.corrupt_side not in ("src", "tgt"):
            bad("corrupt_side must be 'src' or 'tgt'")

    def gap_rate_for(self, lang: str) -> float:
        if isinstance(self.gap_rate, Mapping):
            return float(self.gap_rate.get(lang, 0.0))
        return float(self.gap_rate)

    def rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, stream])

    @classmethod
    def from_dict(cls, data: Mapping) -> "GenConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InvalidConfig(f"unknown config field(s): {', '.join(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidConfig(str(exc)) from None

    @classmethod
    def load(cls, path) -> "GenConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidConfig(f"cannot read config {path}: {exc}") from None
        if not isinstance(data, dict):
            raise InvalidConfig("config must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["languages"] = list(self.languages)
        return out


@dataclass(frozen=True)
class TruthEntry:
    type: str
    sent: str
    side: str
    tok: int
    true: str
    corrupt: str

    @property
    def token(self) -> tuple:
        return (self.sent, self.side, self.tok)


class TruthLog(list):
    """Injected errors, one :class:`TruthEntry` per corrupted link."""

    def by_token(self) -> dict:
        return {e.token: e for e in self}

    def dump(self, dest) -> None:
        _write((asdict(e) for e in self), dest)

    @classmethod
    def load(cls, source) -> "TruthLog":
        log = cls()
        for lineno, text in _numbered_lines(source):
            try:
                log.append(TruthEntry(**json.loads(text)))
            except (json.JSONDecodeError, TypeError) as exc:
                raise InvalidConfig(f"line {lineno}: bad truth record ({exc})") from None
        return log


# ---------------------------------------------------------------------------
# lexicon


def _form(lang: str, n: int) -> str:
    return f"w{n:05d}_{lang}"


def generate_lexicon(config: GenConfig) -> Lexicon:
    """Random multi-wordnet: every synset lexicalized in the anchor
    language, other languages gapped with ``gap_rate``, word forms reused
    across synsets of one POS to induce polysemy."""
    rng = config.rng(0)
    n = config.n_synsets
    pos = rng.choice(len(POS_TAGS), size=n, p=POS_WEIGHTS)
    ids = [f"{i:08d}-{POS_TAGS[p]}" for i, p in enumerate(pos)]
    members = [dict() for _ in range(n)]
    gaps = [set() for _ in range(n)]

    for li, lang in enumerate(config.languages):
        rate = 0.0 if li == 0 else config.gap_rate_for(lang)
        gapped = rng.random(n) < rate
        counts = 1 + rng.poisson(config.synonym_rate - 1.0, size=n)
        counter = 0
        for p in range(len(POS_TAGS)):
            slots = [i for i in range(n) if pos[i] == p and not gapped[i] for _ in range(counts[i])]
            rng.shuffle(slots)
            while slots:
                k = min(int(rng.zipf(config.polysemy_shape)), config.max_senses)
                chosen = [slots.pop(0)]
                j = 0
                while len(chosen) < k and j < len(slots):
                    if slots[j] not in chosen:
                        chosen.append(slots.pop(j))
                    else:
                        j += 1
                form = _form(lang, counter)
                counter += 1
                for i in chosen:
                    members[i].setdefault(lang, []).append(form)
        for i in range(n):
            if gapped[i]:
                gaps[i].add(lang)

    return Lexicon(MultiSynset(ids[i], POS_TAGS[pos[i]], members[i], frozenset(gaps[i])) for i in range(n))


# ---------------------------------------------------------------------------
# bitext


def generate_bitext(lex: Lexicon, config: GenConfig) -> list[AlignmentRecord]:
    """Clean aligned bitext between the first two configured languages.

    Each link picks a synset lexicalized in both languages and one member
    form on each side, so every aligned pair shares a synset.
    """
    src_lang, tgt_lang = config.languages[:2]
    bilingual = [s for s in lex if src_lang in s.members and tgt_lang in s.members]
    if not bilingual:
        raise InsufficientLexicalization(f"no synset is lexicalized in both {src_lang} and {tgt_lang}")
    rng = config.rng(1)
    picks = rng.integers(len(bilingual), size=config.n_alignments)
    records = []
    length = config.sentence_length
    for start in range(0, config.n_alignments, length):
        sent = f"s{start // length:06d}"
        chunk = picks[start : start + length]
        order = rng.permutation(len(chunk))
        for i, pick in enumerate(chunk):
            synset = bilingual[pick]
            src_forms = sorted(synset.members[src_lang])
            tgt_forms = sorted(synset.members[tgt_lang])
            src_form = src_forms[rng.integers(len(src_forms))]
            tgt_form = tgt_forms[rng.integers(len(tgt_forms))]
            records.append(
                AlignmentRecord(
                    sent,
                    Token(src_lang, src_form, synset.pos, i, (synset.id,)),
                    Token(tgt_lang, tgt_form, synset.pos, int(order[i]), (synset.id,)),
                )
            )
    return records


def bitext_sentences(alignments: Iterable[AlignmentRecord]) -> list[Sentence]:
    """Sentence records whose tokens are the aligned lemma forms."""
    sides = {}
    for record in alignments:
        for token in (record.src, record.tgt):
            sides.setdefault((record.sent, token.lang), {})[token.tok] = token.form
    out = []
    for (sent, lang), toks in sorted(sides.items()):
        out.append(Sentence(sent, lang, tuple(toks.get(i, "_") for i in range(max(toks) + 1))))
    return out


# ---------------------------------------------------------------------------
# error injection


def inject_errors(alignments: Sequence[AlignmentRecord], lex: Lexicon, config: GenConfig):
    """Corrupt links; return ``(corrupted, TruthLog)``.

    *reannotate* swaps a token's synset for another synset of the same
    (polysemous) word on ``config.corrupt_side``.  *misalign* re-links the
    target side to a word of a different synset with the same POS.  A link
    is corrupted at most once.  With ``config.isolated`` only re-annotations
    are made, at most one per target synset and never into a synset already
    touched by another error, and only where another link shares the
    target synset.
    """
    rng = config.rng(2)
    n = len(alignments)
    u_re = rng.random(n)
    u_mis = rng.random(n)
    tgt_lang = config.languages[1] if len(config.languages) > 1 else None
    by_pos = {}
    for s in lex:
        if tgt_lang in s.members:
            by_pos.setdefault(s.pos, []).append(s.id)
    group_sizes = Counter(r.tgt.synset for r in alignments)

    used = set()
    out, log = [], TruthLog()
    for i, record in enumerate(alignments):
        side = config.corrupt_side
        token = record.side(side)
        if u_re[i] < config.err_reannotate:
            true = token.synset
            options = [sid for sid in lex.synsets_of(token.lemma) if sid != true]
            other = record.side("tgt" if side == "src" else "src").synset
            options = [sid for sid in options if sid != other]
            if config.isolated:
                anchor = record.tgt.synset
                if anchor in used or group_sizes[anchor] < 2:
                    options = []
                options = [sid for sid in options if sid not in used]
            if options:
                corrupt = options[int(rng.integers(len(options)))]
                out.append(record.with_side(side, token.annotated(corrupt)))
                log.append(TruthEntry(REANNOTATE, record.sent, side, token.tok, true, corrupt))
                used.update((true, corrupt, record.tgt.synset))
                continue
        if not config.isolated and u_mis[i] < config.err_misalign:
            tgt = record.tgt
            avoid = {tgt.synset, record.src.synset}
            options = [sid for sid in by_pos.get(tgt.pos, ()) if sid not in avoid]
            if options:
                corrupt = options[int(rng.integers(len(options)))]
                forms = sorted(lex.synset(corrupt).members[tgt.lang])
                form = forms[int(rng.integers(len(forms)))]
                new_tgt = replace(tgt, form=form, synsets=(corrupt,))
                out.append(record.with_side("tgt", new_tgt))
                log.append(TruthEntry(MISALIGN, record.sent, "tgt", tgt.tok, tgt.synset, corrupt))
                continue
        out.append(record)
    return out, log


def synthesize(config: GenConfig):
    """Lexicon, clean bitext, corrupted bitext and truth log for ``config``."""
    lex = generate_lexicon(config)
    clean = generate_bitext(lex, config)
    corrupted, truth = inject_errors(clean, lex, config)
    return lex, clean, corrupted, truth
