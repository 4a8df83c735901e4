"""Command-line interface.

Exit status: 0 clean, 1 exceptions or conflicts found, 2 input error.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from collections import Counter

from .errors import (
    ConflictUnresolved,
    DuplicateSense,
    DuplicateSynsetId,
    EmptySynset,
    MemberGapConflict,
    UnresolvedSynset,
    WnVerifyError,
)
from .ingest import (
    _numbered_lines,
    dump_alignments,
    dump_lexicon,
    dump_sentences,
    filter_alignments,
    parse_alignment_file,
    parse_lexicon_file,
    parse_sense_index_file,
    resolve_alignments,
    to_text,
)
from .lexicon import UNCOVERED, Lexicon, normalize_lang
from .repair import RepairPolicy, apply_corrections, run_repair, suggestion_from_record, suggestion_to_record
from .scoring import score_correction, score_detection
from .synthgen import GenConfig, TruthLog, bitext_sentences, synthesize
from .validation import check_directions, check_modes, split_resolvable
from .verify import exception_to_record, run_checks

EXIT_CLEAN, EXIT_FOUND, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(report: dict, fmt: str = "json", table=None) -> None:
    if fmt == "table" and table is not None:
        print(table(report))
    else:
        print(json.dumps(report, indent=2, ensure_ascii=False))


def _write_jsonl(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_text(records))


def _read_jsonl(path) -> list:
    out = []
    for lineno, text in _numbered_lines(path):
        try:
            out.append(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: line {lineno}: {exc.msg}") from None
    return out


def _load_lexicon(path, strict=True) -> Lexicon:
    synsets, diagnostics = parse_lexicon_file(path, strict=strict)
    for d in diagnostics:
        print(f"warning: {path}: {d}", file=sys.stderr)
    return Lexicon(synsets)


def _load_alignments(args, lex: Lexicon, strict: bool):
    """Parse, resolve sense numbers and filter; returns (all, kept, info)."""
    records, diagnostics = parse_alignment_file(args.alignments, strict=strict)
    for d in diagnostics:
        print(f"warning: {args.alignments}: {d}", file=sys.stderr)
    unresolved_keys = []
    if args.sense_index:
        index, idiag = parse_sense_index_file(args.sense_index, strict=strict)
        for d in idiag:
            print(f"warning: {args.sense_index}: {d}", file=sys.stderr)
        records, unresolved_keys = resolve_alignments(records, index, strict=strict)
    kept, filter_report = filter_alignments(records)
    kept, unknown = split_resolvable(kept, lex)
    if unknown and strict:
        r = unknown[0]
        bad = r.src.synset if r.src.synset not in lex else r.tgt.synset
        where = f"line {r.line}: " if r.line else ""
        raise UnresolvedSynset(f"{where}synset {bad!r} is not in the lexicon")
    info = {
        "records": len(records) + len(unresolved_keys),
        "unresolved_sense_keys": len(unresolved_keys),
        "filter": filter_report.as_dict(),
        "unknown_synsets": len(unknown),
        "checked": len(kept),
    }
    return records, kept, info


# ---------------------------------------------------------------------------
# validate

VALIDATE_PROPERTIES = [
    ("unique", DuplicateSynsetId.prop),
    ("lexicalized", EmptySynset.prop),
    ("disjoint", MemberGapConflict.prop),
    ("p1", "property #1: a word is monosemous iff it is in a single synset"),
    ("p2", "property #2: absolute synonyms are near-synonyms"),
    ("p3", "property #3: senses are synonymous iff they share a synset"),
    ("p4", DuplicateSense.prop),
    ("p5", "property #5: every sense of a polysemous word is in a different synset"),
    ("index", "lemma index is the inverse of synset membership"),
]


def cmd_validate(args) -> int:
    synsets, diagnostics = parse_lexicon_file(args.lexicon, strict=False)
    fatal = [d for d in diagnostics if d.kind != "invariant"]
    if fatal:
        for d in fatal:
            print(f"error: {args.lexicon}: {d}", file=sys.stderr)
        return EXIT_INPUT

    failures = {key: [] for key, _ in VALIDATE_PROPERTIES}
    by_prop = {prop: key for key, prop in VALIDATE_PROPERTIES}
    for d in diagnostics:
        failures[by_prop.get(d.prop, "lexicalized")].append(d.message)

    seen, unique = set(), []
    for s in synsets:
        if s.id in seen:
            failures["unique"].append(f"duplicate synset id {s.id!r}")
            continue
        seen.add(s.id)
        unique.append(s)
    lex = Lexicon(unique)

    for lemma, ids in lex.index.items():
        if lex.is_monosemous(lemma) == (len(ids) >= 2):
            failures["p1"].append(f"{lemma}: monosemy flag disagrees with {len(ids)} synsets")
        if len(set(ids)) != len(ids):
            failures["p5"].append(f"{lemma}: two senses in one synset")
    for lang in lex.languages:
        for a, b in lex.absolute_synonym_pairs(lang):
            if not lex.near_synonyms(a, b):
                failures["p2"].append(f"{a} / {b}")
    for synset in lex:
        for lemma in synset.lemmas():
            if synset.id not in lex.synsets_of(lemma):
                failures["p3"].append(f"{lemma} is listed in {synset.id} but not indexed there")
    if not lex.check_index():
        failures["index"].append("rebuilt index differs")

    checks = [(prop, failures[key]) for key, prop in VALIDATE_PROPERTIES]
    if args.strict:
        langs = lex.languages
        uncovered = [
            f"{s.id}: {lang}" for s in lex for lang in langs if s.coverage(lang) == UNCOVERED
        ]
        checks.append(("every language is a member or an explicit gap in every synset", uncovered))

    report = {
        "synsets": len(lex),
        "properties": [{"property": prop, "pass": not fails, "failures": fails} for prop, fails in checks],
    }
    if args.format == "json":
        _emit(report)
    else:
        for prop, fails in checks:
            print(f"{'PASS' if not fails else 'FAIL'}  {prop}")
            for f in fails[:20]:
                print(f"      {f}")
            if len(fails) > 20:
                print(f"      ... {len(fails) - 20} more")
    return EXIT_FOUND if any(fails for _, fails in checks) else EXIT_CLEAN


# ---------------------------------------------------------------------------
# detect


def _detect_table(report: dict) -> str:
    cols = [(m, d) for m, per in report["checks"].items() for d in per]
    header = "            " + "".join(f"{m}:{d}".rjust(18) for m, d in cols)
    rows = [header]
    for label, key in (("Instances", "instances"), ("Exceptions", "exceptions")):
        rows.append(label.ljust(12) + "".join(str(report["checks"][m][d][key]).rjust(18) for m, d in cols))
    word = report["checks"].get("word", {})
    for d, counts in word.items():
        rows.append(
            f"word:{d}  polysemous f={counts['f_polysemous']}  near-synonymous e={counts['e_near_synonyms']}"
            f"  both={counts['both']}  neither={counts['neither']}"
        )
    return "\n".join(rows)


def cmd_detect(args) -> int:
    strict = not args.lenient
    lex = _load_lexicon(args.lexicon, strict)
    _, kept, info = _load_alignments(args, lex, strict)
    exceptions, report = run_checks(kept, lex, check_modes(args.mode), check_directions(args.direction))
    if args.out:
        _write_jsonl((exception_to_record(e) for e in exceptions), args.out)
    _emit({"input": info, **report.as_dict()}, args.format, _detect_table)
    return EXIT_FOUND if exceptions else EXIT_CLEAN


# ---------------------------------------------------------------------------
# repair


def cmd_repair(args) -> int:
    strict = not args.lenient
    lex = _load_lexicon(args.lexicon, strict)
    records, kept, info = _load_alignments(args, lex, strict)
    suggestions, report = run_repair(kept, lex, check_directions(args.direction))
    if args.out_suggestions:
        _write_jsonl((suggestion_to_record(s) for s in suggestions), args.out_suggestions)
    status = EXIT_CLEAN
    out = {"input": info, "suggested": report.as_dict()}
    if args.apply:
        policy = RepairPolicy(args.min_support, not args.no_add, args.conflict)
        try:
            new_records, new_lex, applied = apply_corrections(records, lex, suggestions, policy)
        except ConflictUnresolved as exc:
            new_records, new_lex, applied = exc.alignments, exc.lexicon, exc.report
            status = EXIT_FOUND
        if args.out_alignments:
            dump_alignments(new_records, args.out_alignments)
        if args.out_lexicon:
            dump_lexicon(new_lex, args.out_lexicon)
        out["applied"] = applied.as_dict()
    elif report.conflicts and args.conflict == "skip":
        status = EXIT_FOUND
    if status == EXIT_FOUND:
        for c in (out.get("applied") or out["suggested"])["conflicts"]:
            targets = ", ".join(f"{x['to']} ({x['support']})" for x in c["candidates"])
            print(f"conflict: {c['sent']} {c['side']} token {c['tok']}: {targets}", file=sys.stderr)
    _emit(out)
    return status


# ---------------------------------------------------------------------------
# stats


def _lang_stats(lex: Lexicon, lang: str) -> dict:
    lemmas = lex.lemmas(lang)
    hist = Counter(len(lex.synsets_of(l)) for l in lemmas)
    pairs = lex.absolute_synonym_pairs(lang)
    words = {w for pair in pairs for w in pair}
    return {
        "lemmas": len(lemmas),
        "monosemous": hist.get(1, 0),
        "polysemous": sum(v for k, v in hist.items() if k >= 2),
        "senses_histogram": {str(k): hist[k] for k in sorted(hist)},
        "absolute_synonym_pairs": len(pairs),
        "words_with_absolute_synonym": len(words),
    }


def cmd_stats(args) -> int:
    lex = _load_lexicon(args.lexicon)
    known = set(lex.languages)
    langs = sorted(known)
    pairs = list(itertools.combinations(langs, 2))
    if args.lang:
        langs = [normalize_lang(args.lang)]
        pairs = []
    if args.pair:
        parts = [normalize_lang(p) for p in args.pair.split(",")]
        if len(parts) != 2 or parts[0] == parts[1]:
            raise InputError("--pair expects two distinct languages, e.g. en,it")
        pairs = [tuple(parts)]
        langs = [] if not args.lang else langs
    for lang in set(langs) | {l for p in pairs for l in p}:
        if lang not in known:
            raise InputError(f"language {lang!r} does not occur in {args.lexicon}")
    report = {
        "synsets": len(lex),
        "languages": {lang: _lang_stats(lex, lang) for lang in langs},
        "pairs": {
            f"{e},{f}": {"absolute_translation_pairs": len(lex.absolute_translation_pairs(e, f))} for e, f in pairs
        },
    }
    _emit(report)
    return EXIT_CLEAN


# ---------------------------------------------------------------------------
# synth / score


def cmd_synth(args) -> int:
    config = GenConfig.load(args.config)
    lex, _, corrupted, truth = synthesize(config)
    dump_lexicon(lex, args.out_lexicon)
    dump_alignments(corrupted, args.out_alignments)
    truth.dump(args.out_truth)
    if args.out_sentences:
        dump_sentences(bitext_sentences(corrupted), args.out_sentences)
    _emit({"synsets": len(lex), "alignments": len(corrupted), "injected": len(truth), "config": config.to_dict()})
    return EXIT_CLEAN


def cmd_score(args) -> int:
    if not (args.exceptions or args.suggestions):
        raise InputError("give --exceptions and/or --suggestions")
    truth = TruthLog.load(args.truth)
    report = {"injected": len(truth)}
    try:
        if args.exceptions:
            report["detection"] = score_detection(_read_jsonl(args.exceptions), truth).as_dict()
        if args.suggestions:
            suggestions = [suggestion_from_record(r) for r in _read_jsonl(args.suggestions)]
            report["correction"] = score_correction(suggestions, truth).as_dict()
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed record: {exc}") from None
    _emit(report)
    return EXIT_CLEAN


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wnverify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the structural synset properties of a lexicon")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--strict", action="store_true", help="also require every synset to cover every language")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_validate)

    def corpus_args(p):
        p.add_argument("--lexicon", required=True)
        p.add_argument("--alignments", required=True)
        p.add_argument("--sense-index", help="resolve sense_no annotations through this index")
        p.add_argument("--lenient", action="store_true", help="skip bad lines and unknown synsets instead of failing")

    p = sub.add_parser("detect", help="enumerate theorem premises and report exceptions")
    corpus_args(p)
    p.add_argument("--mode", choices=("triples", "quads", "word", "consistency", "all"), default="all")
    p.add_argument("--direction", choices=("st", "ts", "both"), default="both")
    p.add_argument("--out", help="write exception records here")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("repair", help="suggest (and optionally apply) corrections")
    corpus_args(p)
    p.add_argument("--min-support", type=int, default=1)
    p.add_argument("--apply", action="store_true")
    p.add_argument("--out-alignments")
    p.add_argument("--out-lexicon")
    p.add_argument("--out-suggestions")
    p.add_argument("--direction", choices=("st", "ts", "both"), default="st")
    p.add_argument("--conflict", choices=("skip", "highest_support"), default="skip")
    p.add_argument("--no-add", action="store_true", help="never add lemmas to synsets")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("stats", help="polysemy histogram and absolute synonym/translation pair counts")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--lang")
    p.add_argument("--pair", help="E,F")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("synth", help="generate a synthetic lexicon, bitext and truth log")
    p.add_argument("--config", required=True)
    p.add_argument("--out-lexicon", required=True)
    p.add_argument("--out-alignments", required=True)
    p.add_argument("--out-truth", required=True)
    p.add_argument("--out-sentences")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("score", help="score exceptions and suggestions against a truth log")
    p.add_argument("--exceptions")
    p.add_argument("--suggestions")
    p.add_argument("--truth", required=True)
    p.set_defaults(func=cmd_score)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WnVerifyError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
