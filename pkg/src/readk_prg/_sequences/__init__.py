"""Read-k sequences and their structure theory."""

from readk_prg._sequences.checkers import (
    AmbiguousDecompositionError,
    Direction,
    InterleavingCertificate,
    InterleavingResult,
    InterleavingViolation,
    JumpViolation,
    KInterleavingResult,
    MonotoneDecomposition,
    MonotoneViolation,
    MonotonicityResult,
    NotPerReadMonotoneError,
    PairChecker,
    Segment,
    exhaustive_interleaving_blocks,
    has_no_upward_jumps,
    is_2_regularly_interleaving,
    is_k_regularly_interleaving,
    is_per_read_monotone,
    monotone_decomposition,
)
from readk_prg._sequences.head import (
    HeadWalkProfile,
    TapeMismatchError,
    head_visit_profile,
)
from readk_prg._sequences.io import (
    SequenceFile,
    SequenceParseError,
    format_sequence_file,
    parse_sequence_file,
    read_sequence_file,
    write_sequence_file,
)
from readk_prg._sequences.monotone import (
    best_monotone_subsequence,
    extract_monotone_subset,
    longest_monotone_subsequence,
)
from readk_prg._sequences.partition import (
    InvalidPartitionError,
    PartCertificate,
    VariablePartition,
    certify_part,
    partition_variables,
    partition_size_bound,
    verify_partition,
)
from readk_prg._sequences.sequence import (
    LengthMismatchError,
    OccurrenceView,
    ReadIndexOutOfRangeError,
    ReadKSequence,
    WrongMultiplicityError,
    canonical_relabel,
    enumerate_read_k_sequences,
    is_k_pass,
    k_pass_sequence,
    missing_reads,
    occurrence_view,
    pad_sequence_to_exact_k,
    pair_view,
    restrict,
    two_pass,
    validate,
)

__all__ = [
    "AmbiguousDecompositionError",
    "Direction",
    "HeadWalkProfile",
    "InterleavingCertificate",
    "InterleavingResult",
    "InterleavingViolation",
    "InvalidPartitionError",
    "JumpViolation",
    "KInterleavingResult",
    "LengthMismatchError",
    "MonotoneDecomposition",
    "MonotoneViolation",
    "MonotonicityResult",
    "NotPerReadMonotoneError",
    "OccurrenceView",
    "PairChecker",
    "PartCertificate",
    "ReadIndexOutOfRangeError",
    "ReadKSequence",
    "Segment",
    "SequenceFile",
    "SequenceParseError",
    "TapeMismatchError",
    "VariablePartition",
    "WrongMultiplicityError",
    "best_monotone_subsequence",
    "canonical_relabel",
    "certify_part",
    "enumerate_read_k_sequences",
    "exhaustive_interleaving_blocks",
    "extract_monotone_subset",
    "format_sequence_file",
    "has_no_upward_jumps",
    "head_visit_profile",
    "is_2_regularly_interleaving",
    "is_k_pass",
    "is_k_regularly_interleaving",
    "is_per_read_monotone",
    "k_pass_sequence",
    "longest_monotone_subsequence",
    "missing_reads",
    "monotone_decomposition",
    "occurrence_view",
    "pad_sequence_to_exact_k",
    "pair_view",
    "parse_sequence_file",
    "partition_variables",
    "read_sequence_file",
    "restrict",
    "partition_size_bound",
    "two_pass",
    "validate",
    "verify_partition",
    "write_sequence_file",
]
