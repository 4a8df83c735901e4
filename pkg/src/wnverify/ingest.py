"""Line-delimited JSON readers/writers, sense-key resolution and instance filters.

Four record formats are supported, one record per line:

* lexicon:     ``{"id", "pos", "members": {lang: [form, ...]}, "gaps": [lang, ...]}``
* alignment:   ``{"sent", "src": TOKEN, "tgt": TOKEN}`` where TOKEN is
  ``{"lang", "lemma", "pos", "synset" | "sense_no", "tok"}``
* sense index: ``{"lang", "lemma", "pos", "senses": [synset id, ...]}``
* sentence:    ``{"sent", "lang", "tokens": [str, ...]}``

A token annotated with several senses repeats its ``synset`` (or
``sense_no``) key, or gives a list; such tokens parse fine and are removed
later by :func:`filter_alignments`.

Parsers are strict by default: the first bad line raises.  With
``strict=False`` bad lines are skipped and reported as :class:`Diagnostic`.
"""
from __future__ import annotations

import io
import json
import os
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional, TextIO, Union

from .errors import (
    LexiconError,
    ParseError,
    RecordSyntaxError,
    SchemaError,
    UnresolvedKey,
)
from .lexicon import POS_TAGS, Lemma, MultiSynset, Sense, normalize_form, normalize_lang

Source = Union[str, os.PathLike, TextIO, Iterable[str]]

SIDES = ("src", "tgt")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    kind: str  # "syntax", "schema" or "invariant"
    message: str
    field: Optional[str] = None
    prop: Optional[str] = None

    @classmethod
    def from_error(cls, exc, line):
        if isinstance(exc, RecordSyntaxError):
            return cls(line, "syntax", str(exc))
        if isinstance(exc, SchemaError):
            return cls(line, "schema", str(exc), field=exc.field)
        return cls(line, "invariant", f"line {line}: {exc}", prop=getattr(exc, "prop", None))

    def __str__(self):
        return self.message


# ---------------------------------------------------------------------------
# alignment data model


@dataclass(frozen=True)
class Token:
    """One sense-annotated token on one side of an alignment link.

    ``synsets`` holds resolved annotations and ``sense_nos`` unresolved
    sense numbers; an empty pair means the annotation is missing and more
    than one entry means a multi-sense annotation.
    """

    lang: str
    form: str
    pos: str
    tok: int
    synsets: tuple = ()
    sense_nos: tuple = ()

    @cached_property
    def lemma(self) -> Lemma:
        return Lemma(self.lang, self.form, self.pos)

    @property
    def synset(self) -> Optional[str]:
        return self.synsets[0] if len(self.synsets) == 1 else None

    @property
    def sense(self) -> Sense:
        if len(self.synsets) != 1:
            raise ValueError(f"token {self.tok} has {len(self.synsets)} synset annotations")
        return Sense(self.lemma, self.synsets[0])

    def annotated(self, synset: str) -> "Token":
        return replace(self, synsets=(synset,), sense_nos=())


@dataclass(frozen=True)
class AlignmentRecord:
    sent: str
    src: Token
    tgt: Token
    line: Optional[int] = field(default=None, compare=False)

    def side(self, name: str) -> Token:
        return self.src if name == "src" else self.tgt

    def with_side(self, name: str, token: Token) -> "AlignmentRecord":
        return replace(self, **{name: token})


@dataclass(frozen=True)
class Sentence:
    sent: str
    lang: str
    tokens: tuple


@dataclass(frozen=True)
class SenseKey:
    lemma: Lemma
    sense_number: int

    def __post_init__(self):
        if self.sense_number < 1:
            raise ValueError("sense numbers start at 1")


class SenseIndex(Mapping):
    """Maps a lemma to its synset ids in sense-number order."""

    def __init__(self, entries: Optional[Mapping] = None):
        self._entries = {}
        for lemma, ids in (entries or {}).items():
            ids = tuple(ids)
            if len(set(ids)) != len(ids):
                raise ValueError(f"{lemma}: two sense numbers map to one synset")
            self._entries[lemma] = ids

    def __getitem__(self, lemma):
        return self._entries[lemma]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def resolve(self, key: SenseKey) -> str:
        senses = self._entries.get(key.lemma, ())
        if key.sense_number > len(senses):
            raise UnresolvedKey(f"{key.lemma} has no sense number {key.sense_number}")
        return senses[key.sense_number - 1]


def resolve_sense_key(index: SenseIndex, key: SenseKey) -> str:
    return index.resolve(key)


# ---------------------------------------------------------------------------
# low-level line handling


class _Repeated(list):
    """Values of a key that occurs more than once in one JSON object."""


def _pairs_hook(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            prev = out[key]
            out[key] = _Repeated(prev + [value]) if isinstance(prev, _Repeated) else _Repeated([prev, value])
        else:
            out[key] = value
    return out


def _open(source: Source) -> Iterable[str]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            yield from fh
    else:
        yield from source


def _numbered_lines(source: Source) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(_open(source), 1):
        if line.strip():
            yield lineno, line


def _load(text: str, line: int) -> dict:
    try:
        obj = json.loads(text, object_pairs_hook=_pairs_hook)
    except json.JSONDecodeError as exc:
        raise RecordSyntaxError(f"invalid JSON ({exc.msg} at column {exc.colno})", line) from None
    if not isinstance(obj, dict):
        raise RecordSyntaxError("record is not a JSON object", line)
    return obj


def _parse(source: Source, build, strict: bool):
    items, diagnostics = [], []
    for lineno, text in _numbered_lines(source):
        try:
            items.append(build(_load(text, lineno), lineno))
        except (ParseError, LexiconError) as exc:
            if strict:
                if isinstance(exc, LexiconError):
                    exc.line = lineno
                    exc.args = (f"line {lineno}: {exc}",)
                raise
            diagnostics.append(Diagnostic.from_error(exc, lineno))
    return items, diagnostics


def _check_keys(obj, required, optional, line, where="record"):
    for key, value in obj.items():
        if isinstance(value, _Repeated) and key not in ("synset", "sense_no"):
            raise SchemaError(f"field {key!r} repeated in {where}", line, key)
    missing = [k for k in required if k not in obj]
    if missing:
        raise SchemaError(f"{where} is missing field {missing[0]!r}", line, missing[0])
    extra = sorted(set(obj) - set(required) - set(optional))
    if extra:
        raise SchemaError(f"{where} has unknown field {extra[0]!r}", line, extra[0])


def _string(obj, key, line, where="record"):
    value = obj[key]
    if not isinstance(value, str) or not value.strip():
        raise SchemaError(f"{where} field {key!r} must be a non-empty string", line, key)
    return value


def _pos(obj, line, where="record"):
    value = obj["pos"]
    if value not in POS_TAGS:
        raise SchemaError(f"{where} field 'pos' must be one of {'/'.join(POS_TAGS)}, got {value!r}", line, "pos")
    return value


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _write(records: Iterable[dict], dest) -> None:
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8") as fh:
            _write(records, fh)
        return
    for record in records:
        dest.write(_dump(record))
        dest.write("\n")


def to_text(records: Iterable[dict]) -> str:
    buf = io.StringIO()
    _write(records, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# lexicon files


def _build_synset(obj, line) -> MultiSynset:
    _check_keys(obj, ("id", "pos", "members"), ("gaps",), line)
    sid = _string(obj, "id", line)
    pos = _pos(obj, line)
    members = obj["members"]
    if not isinstance(members, dict):
        raise SchemaError("field 'members' must be an object", line, "members")
    for lang, forms in members.items():
        if not lang.strip():
            raise SchemaError("empty language code in 'members'", line, "members")
        if not isinstance(forms, list) or not all(isinstance(f, str) for f in forms):
            raise SchemaError(f"members of {lang!r} must be a list of strings", line, "members")
    gaps = obj.get("gaps", [])
    if not isinstance(gaps, list) or not all(isinstance(g, str) and g.strip() for g in gaps):
        raise SchemaError("field 'gaps' must be a list of language codes", line, "gaps")
    langs = [normalize_lang(l) for l in members]
    if len(set(langs)) != len(langs):
        raise SchemaError("language listed twice in 'members'", line, "members")
    return MultiSynset(sid, pos, members, frozenset(gaps))


def parse_lexicon_file(source: Source, strict: bool = True):
    """Parse a lexicon file into ``(synsets, diagnostics)``."""
    return _parse(source, _build_synset, strict)


def synset_to_record(synset: MultiSynset) -> dict:
    return {
        "id": synset.id,
        "pos": synset.pos,
        "members": {lang: sorted(forms) for lang, forms in sorted(synset.members.items())},
        "gaps": sorted(synset.gaps),
    }


def dump_lexicon(synsets: Iterable[MultiSynset], dest) -> None:
    _write((synset_to_record(s) for s in synsets), dest)


# ---------------------------------------------------------------------------
# alignment files


def _annotation(value, key, line, where):
    if value is None:
        return ()
    values = list(value) if isinstance(value, list) else [value]
    out = []
    for v in values:
        if key == "synset":
            if not isinstance(v, str) or not v:
                raise SchemaError(f"{where} field 'synset' must hold synset id strings", line, "synset")
        elif isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise SchemaError(f"{where} field 'sense_no' must hold positive integers", line, "sense_no")
        out.append(v)
    return tuple(out)


def _build_token(obj, line, where) -> Token:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object", line, where)
    _check_keys(obj, ("lang", "lemma", "pos", "tok"), ("synset", "sense_no"), line, where)
    if "synset" in obj and "sense_no" in obj:
        raise SchemaError(f"{where} has both 'synset' and 'sense_no'", line, "synset")
    lang = normalize_lang(_string(obj, "lang", line, where))
    form = normalize_form(_string(obj, "lemma", line, where))
    pos = _pos(obj, line, where)
    tok = obj["tok"]
    if isinstance(tok, bool) or not isinstance(tok, int) or tok < 0:
        raise SchemaError(f"{where} field 'tok' must be a non-negative integer", line, "tok")
    return Token(
        lang,
        form,
        pos,
        tok,
        synsets=_annotation(obj.get("synset"), "synset", line, where),
        sense_nos=_annotation(obj.get("sense_no"), "sense_no", line, where),
    )


def _build_alignment(obj, line) -> AlignmentRecord:
    _check_keys(obj, ("sent", "src", "tgt"), (), line)
    sent = _string(obj, "sent", line)
    src = _build_token(obj["src"], line, "src")
    tgt = _build_token(obj["tgt"], line, "tgt")
    if src.lang == tgt.lang:
        raise SchemaError(f"src and tgt share language {src.lang!r}", line, "lang")
    return AlignmentRecord(sent, src, tgt, line)


def parse_alignment_file(source: Source, strict: bool = True):
    """Parse an alignment file into ``(records, diagnostics)``, in input order."""
    return _parse(source, _build_alignment, strict)


def token_to_record(token: Token) -> dict:
    rec = {"lang": token.lang, "lemma": token.form, "pos": token.pos}
    if token.sense_nos:
        rec["sense_no"] = token.sense_nos[0] if len(token.sense_nos) == 1 else list(token.sense_nos)
    elif len(token.synsets) == 1:
        rec["synset"] = token.synsets[0]
    else:
        rec["synset"] = list(token.synsets) if token.synsets else None
    rec["tok"] = token.tok
    return rec


def alignment_to_record(record: AlignmentRecord) -> dict:
    return {"sent": record.sent, "src": token_to_record(record.src), "tgt": token_to_record(record.tgt)}


def dump_alignments(records: Iterable[AlignmentRecord], dest) -> None:
    _write((alignment_to_record(r) for r in records), dest)


# ---------------------------------------------------------------------------
# sense index files


def _build_index_entry(obj, line):
    _check_keys(obj, ("lang", "lemma", "pos", "senses"), (), line)
    lemma = Lemma(_string(obj, "lang", line), _string(obj, "lemma", line), _pos(obj, line))
    senses = obj["senses"]
    if not isinstance(senses, list) or not all(isinstance(s, str) and s for s in senses):
        raise SchemaError("field 'senses' must be a list of synset ids", line, "senses")
    if len(set(senses)) != len(senses):
        raise SchemaError(f"{lemma}: two sense numbers map to the same synset", line, "senses")
    return lemma, tuple(senses)


def parse_sense_index_file(source: Source, strict: bool = True):
    """Parse a sense-index file into ``(SenseIndex, diagnostics)``."""
    entries, diagnostics = _parse(source, _build_index_entry, strict)
    table = {}
    for lemma, senses in entries:
        if lemma in table:
            exc = SchemaError(f"{lemma} listed twice", None, "lemma")
            if strict:
                raise exc
            diagnostics.append(Diagnostic(0, "schema", str(exc), "lemma"))
            continue
        table[lemma] = senses
    return SenseIndex(table), diagnostics


def dump_sense_index(index: SenseIndex, dest) -> None:
    _write(
        ({"lang": l.lang, "lemma": l.form, "pos": l.pos, "senses": list(index[l])} for l in sorted(index)),
        dest,
    )


def resolve_alignments(records: Iterable[AlignmentRecord], index: SenseIndex, strict: bool = True):
    """Replace sense numbers by synset ids.

    Returns ``(resolved, unresolved)``; a record with any unresolvable
    sense number is moved to ``unresolved`` (or raises when strict).
    """
    resolved, unresolved = [], []
    for record in records:
        try:
            for name in SIDES:
                token = record.side(name)
                if token.sense_nos:
                    ids = tuple(index.resolve(SenseKey(token.lemma, n)) for n in token.sense_nos)
                    record = record.with_side(name, replace(token, synsets=ids, sense_nos=()))
        except UnresolvedKey as exc:
            if strict:
                where = f"line {record.line}: " if record.line else ""
                raise UnresolvedKey(f"{where}{exc}") from None
            unresolved.append(record)
            continue
        resolved.append(record)
    return resolved, unresolved


# ---------------------------------------------------------------------------
# sentence files


def _build_sentence(obj, line) -> Sentence:
    _check_keys(obj, ("sent", "lang", "tokens"), (), line)
    tokens = obj["tokens"]
    if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
        raise SchemaError("field 'tokens' must be a list of strings", line, "tokens")
    return Sentence(_string(obj, "sent", line), normalize_lang(_string(obj, "lang", line)), tuple(tokens))


def parse_sentence_file(source: Source, strict: bool = True):
    return _parse(source, _build_sentence, strict)


def dump_sentences(sentences: Iterable[Sentence], dest) -> None:
    _write(({"sent": s.sent, "lang": s.lang, "tokens": list(s.tokens)} for s in sentences), dest)


# ---------------------------------------------------------------------------
# instance filters


@dataclass
class FilterReport:
    kept: int = 0
    dropped_multi_sense: int = 0
    dropped_missing: int = 0
    dropped_pos_mismatch: int = 0

    @property
    def total(self) -> int:
        return self.kept + self.dropped_multi_sense + self.dropped_missing + self.dropped_pos_mismatch

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "kept": self.kept,
            "dropped_multi_sense": self.dropped_multi_sense,
            "dropped_missing": self.dropped_missing,
            "dropped_pos_mismatch": self.dropped_pos_mismatch,
        }


def filter_alignments(records: Iterable[AlignmentRecord]):
    """Drop multi-sense tokens, missing annotations and POS mismatches.

    Each dropped record is counted once, under the first matching category
    in that order.
    """
    kept, report = [], FilterReport()
    for record in records:
        annotations = [len(t.synsets) + len(t.sense_nos) for t in (record.src, record.tgt)]
        if max(annotations) > 1:
            report.dropped_multi_sense += 1
        elif min(annotations) == 0:
            report.dropped_missing += 1
        elif record.src.pos != record.tgt.pos:
            report.dropped_pos_mismatch += 1
        else:
            report.kept += 1
            kept.append(record)
    return kept, report
