"""Corpus generation and the inequality verification harness."""

from .corpus import CorpusSpec, corpus_hash, generate, generate_karamata_pairs, \
    generate_lacunary_pairs
from .report import CheckCase, CheckReport, write_reports
from .checks import (SUITE_NAMES, check_embeddings_chain, check_hardy,
                     check_karamata, check_le3, check_mink, check_te3,
                     check_te4, check_thm5, run_suite)
from .calibration import calibration
