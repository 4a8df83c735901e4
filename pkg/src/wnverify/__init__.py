"""Consistency checking and repair for multi-wordnets and sense-annotated bitexts."""
from .errors import WnVerifyError
from .estimators import ExceptionDetector, SenseRepairer
from .ingest import (
    AlignmentRecord,
    FilterReport,
    SenseIndex,
    SenseKey,
    Token,
    filter_alignments,
    parse_alignment_file,
    parse_lexicon_file,
    parse_sense_index_file,
    resolve_sense_key,
)
from .lexicon import Lemma, Lexicon, MultiSynset, Sense, build_lexicon, senses_synonymous
from .repair import CorrectionSuggestion, RepairPolicy, apply_corrections, run_repair, suggest_corrections
from .synthgen import GenConfig, generate_bitext, generate_lexicon, inject_errors
from .verify import (
    check_alignment_consistency,
    check_word_theorem,
    detect_sense_exceptions,
    enumerate_triples,
    enumerate_quads,
    run_checks,
)

__version__ = "0.1.0"
