"""Unithood of word-sequence pairs from document counts.

The odds of unithood combine how exclusively two units co-occur in their
conjoined form with how widespread that form is; the UH, mutual
information and C-value baselines are provided alongside.
"""

from .counts import (CountSnapshot, LocalIndex, PhraseQuery, ProviderConfig, build_local_index,
                     co_doc_count, doc_count, estimate_index_size, occurrence_count, snapshot)
from .evaluation import (ContingencyTable, Metrics, build_contingency, compute_metrics,
                         threshold_sweep)
from .extract import (CandidatePair, extract_noun_phrases, generate_pairs, parse_tagged_input)
from .measures import (CValueInput, Decision, OuConfig, UhThresholds, c_value, decide_merge_ou,
                       independence_ratio, lexical_independence, mutual_information, odds_global,
                       odds_local, odds_of_unithood, unithood_uh)

__version__ = "0.1.0"
