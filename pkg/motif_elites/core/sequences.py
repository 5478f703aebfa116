# motif_elites/core/sequences.py - FASTA ingest, encoding, subsets and null backgrounds
# Sequences are stored as read-only uint8 code arrays (A=0, C=1, G=2, T=3, N=4).

# --- Standard Library Imports ---
import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence as SequenceType, Tuple, Union

# --- Third-Party Imports ---
import numpy as np

# --- Local Imports ---
from .constants import ALPHABET, BACKGROUND_PSEUDOCOUNT, FASTA_LINE_WIDTH, N_CODE
from .errors import (
    DuplicateId,
    EmptyInput,
    InvalidParams,
    MalformedRecord,
    NoInformativeBases,
    TooFewSequences,
)
from .logging_config import get_logger

logger = get_logger("sequences")

SeedLike = Union[int, np.random.Generator, None]

# Byte -> code lookup; anything outside ACGT (either case) is ambiguous
_ENCODE_LUT = np.full(256, N_CODE, dtype=np.uint8)
for _code, _base in enumerate(ALPHABET):
    _ENCODE_LUT[ord(_base)] = _code
    _ENCODE_LUT[ord(_base.lower())] = _code

_COMPLEMENT_LUT = np.array([3, 2, 1, 0, N_CODE], dtype=np.uint8)
_DECODE = np.frombuffer((ALPHABET + "N").encode("ascii"), dtype=np.uint8)


class SequenceRole(Enum):
    """Whether a sequence set is the signal or the null."""

    FOREGROUND = "foreground"
    BACKGROUND = "background"


def encode_bases(text: str) -> np.ndarray:
    """Encode a nucleotide string into a read-only code array."""
    raw = np.frombuffer(text.encode("ascii", errors="replace"), dtype=np.uint8)
    codes = _ENCODE_LUT[raw]
    codes.flags.writeable = False
    return codes


def decode_bases(codes: np.ndarray) -> str:
    """Render a code array back to uppercase ACGTN text."""
    return _DECODE[np.asarray(codes, dtype=np.intp)].tobytes().decode("ascii")


@dataclass(frozen=True, eq=False)
class Sequence:
    """
    One DNA sequence.

    Attributes:
        id (str): Record identifier, unique within its set.
        bases (np.ndarray): Read-only uint8 codes in {0..4}.
    """

    id: str
    bases: np.ndarray

    def __post_init__(self) -> None:
        if not self.id:
            raise MalformedRecord(self.id, "empty identifier")
        bases = np.asarray(self.bases, dtype=np.uint8)
        if bases.ndim != 1 or bases.size == 0:
            raise MalformedRecord(self.id)
        if np.any(bases > N_CODE):
            raise MalformedRecord(self.id, "base codes outside 0..4")
        if bases.flags.writeable:
            bases = bases.copy()
            bases.flags.writeable = False
        object.__setattr__(self, "bases", bases)

    @classmethod
    def from_string(cls, record_id: str, text: str) -> "Sequence":
        return cls(record_id, encode_bases(text))

    @property
    def length(self) -> int:
        return int(self.bases.size)

    @property
    def text(self) -> str:
        return decode_bases(self.bases)

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sequence):
            return NotImplemented
        return self.id == other.id and np.array_equal(self.bases, other.bases)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        preview = self.text if self.length <= 20 else self.text[:17] + "..."
        return f"Sequence(id={self.id!r}, length={self.length}, bases={preview!r})"


@dataclass(frozen=True)
class EncodedSet:
    """Padded code matrix of a sequence set; padding uses the N code."""

    codes: np.ndarray
    lengths: np.ndarray


@dataclass(frozen=True)
class SequenceSet:
    """
    An immutable collection of sequences sharing a role.

    Attributes:
        role (SequenceRole): Foreground or background, fixed at construction.
        sequences (Tuple[Sequence, ...]): Members in input order.
        subset_label (Optional[str]): Label such as "subset-0" after partitioning.
    """

    role: SequenceRole
    sequences: Tuple[Sequence, ...]
    subset_label: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "sequences", tuple(self.sequences))
        seen = set()
        for seq in self.sequences:
            if seq.id in seen:
                raise DuplicateId(seq.id)
            seen.add(seq.id)

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self):
        return iter(self.sequences)

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(seq.id for seq in self.sequences)

    @cached_property
    def encoded(self) -> EncodedSet:
        """Padded matrix shared by every scan over this set."""
        lengths = np.array([seq.length for seq in self.sequences], dtype=np.int64)
        width = int(lengths.max()) if lengths.size else 0
        codes = np.full((len(self.sequences), width), N_CODE, dtype=np.uint8)
        for row, seq in enumerate(self.sequences):
            codes[row, : seq.length] = seq.bases
        codes.flags.writeable = False
        lengths.flags.writeable = False
        return EncodedSet(codes=codes, lengths=lengths)

    def with_label(self, label: Optional[str]) -> "SequenceSet":
        return SequenceSet(self.role, self.sequences, label)


@dataclass(frozen=True)
class BackgroundDistribution:
    """Nucleotide probabilities over A, C, G, T; strictly positive."""

    probs: Tuple[float, float, float, float]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        if len(probs) != 4:
            raise InvalidParams(f"background needs 4 probabilities, got {len(probs)}")
        if min(probs) <= 0.0 or abs(sum(probs) - 1.0) > 1e-9:
            raise InvalidParams(f"background probabilities must be positive and sum to 1: {probs}")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def uniform(cls) -> "BackgroundDistribution":
        return cls((0.25, 0.25, 0.25, 0.25))

    def as_array(self) -> np.ndarray:
        return np.array(self.probs, dtype=np.float64)


# --- FASTA I/O ---


def parse_fasta(
    text: Union[str, bytes], role: SequenceRole = SequenceRole.FOREGROUND
) -> SequenceSet:
    """
    Parse FASTA text into a sequence set.

    Lowercase bases are uppercased, characters outside ACGT become N and the
    lines of a record are joined. The record id is the first header token.

    Raises:
        EmptyInput: No records in the input.
        MalformedRecord: A record with no bases or an empty header.
        DuplicateId: Two records share an id.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")

    records: List[Tuple[str, List[str]]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            header = line[1:].split()
            if not header:
                raise MalformedRecord("", "empty header")
            records.append((header[0], []))
        elif not records:
            raise MalformedRecord("<preamble>", "sequence data before the first header")
        else:
            records[-1][1].append("".join(line.split()))

    if not records:
        raise EmptyInput()

    sequences = []
    seen = set()
    for record_id, chunks in records:
        if record_id in seen:
            raise DuplicateId(record_id)
        seen.add(record_id)
        bases = "".join(chunks)
        if not bases:
            raise MalformedRecord(record_id)
        sequences.append(Sequence.from_string(record_id, bases))

    return SequenceSet(role, tuple(sequences))


def read_fasta(path: Union[str, Path], role: SequenceRole = SequenceRole.FOREGROUND) -> SequenceSet:
    """Read a FASTA file from disk."""
    path = Path(path)
    seq_set = parse_fasta(path.read_bytes(), role)
    logger.info(f"Read {len(seq_set)} {role.value} sequences from {path}")
    return seq_set


def write_fasta(seq_set: SequenceSet, width: int = FASTA_LINE_WIDTH) -> str:
    """Render a sequence set as FASTA with fixed-width lines."""
    lines: List[str] = []
    for seq in seq_set:
        lines.append(f">{seq.id}")
        text = seq.text
        lines.extend(text[i : i + width] for i in range(0, len(text), width))
    return "\n".join(lines) + ("\n" if lines else "")


# --- Composition ---


def empirical_background(
    seq_set: SequenceSet, pseudocount: float = BACKGROUND_PSEUDOCOUNT
) -> BackgroundDistribution:
    """
    Nucleotide frequencies with a Laplace pseudocount; N bases are excluded.

    Raises:
        NoInformativeBases: Every base in the set is N.
    """
    counts = np.zeros(N_CODE + 1, dtype=np.int64)
    for seq in seq_set:
        counts += np.bincount(seq.bases, minlength=N_CODE + 1)
    informative = counts[:N_CODE]
    total = int(informative.sum())
    if total == 0:
        raise NoInformativeBases()

    probs = (informative + pseudocount) / (total + N_CODE * pseudocount)
    return BackgroundDistribution(tuple(probs.tolist()))


def reverse_complement_sequence(seq: Sequence) -> Sequence:
    """Opposite strand of a sequence; N stays N."""
    return Sequence(seq.id, _COMPLEMENT_LUT[seq.bases][::-1].copy())


# --- Subsets ---


def partition_subsets(seq_set: SequenceSet, n: int, seed: SeedLike) -> List[SequenceSet]:
    """
    Shuffle deterministically and split into ``n`` disjoint subsets.

    The first ``len(seq_set) % n`` subsets hold one extra sequence; labels are
    "subset-0" .. "subset-{n-1}".

    Raises:
        TooFewSequences: More subsets requested than sequences available.
    """
    if n < 1:
        raise InvalidParams(f"number of subsets must be >= 1, got {n}")
    if n > len(seq_set):
        raise TooFewSequences(len(seq_set), n)

    rng = np.random.default_rng(seed)
    order = rng.permutation(len(seq_set))
    base, extra = divmod(len(seq_set), n)

    subsets = []
    start = 0
    for i in range(n):
        size = base + (1 if i < extra else 0)
        members = tuple(seq_set.sequences[j] for j in order[start : start + size])
        subsets.append(SequenceSet(seq_set.role, members, f"subset-{i}"))
        start += size
    return subsets


def write_subset_manifest(subsets: Iterable[SequenceSet]) -> str:
    """JSON list of {subset_label, sequence_ids} entries."""
    payload = [
        {"subset_label": subset.subset_label, "sequence_ids": list(subset.ids)}
        for subset in subsets
    ]
    return json.dumps(payload, indent=2) + "\n"


# --- Dinucleotide shuffle ---


def _prepare_edges(codes: SequenceType[int]) -> Dict[int, List[int]]:
    edges: Dict[int, List[int]] = {}
    for current, following in zip(codes[:-1], codes[1:]):
        edges.setdefault(int(current), []).append(int(following))
    return edges


def _shuffle_edges(edges: Dict[int, List[int]], rng: np.random.Generator) -> None:
    # The last exit of every symbol stays last; those edges form a tree towards
    # the final symbol, so the walk below always uses every edge.
    for symbol in sorted(edges):
        successors = edges[symbol]
        head = successors[:-1]
        if len(head) > 1:
            head = [head[k] for k in rng.permutation(len(head))]
        edges[symbol] = head + successors[-1:]


def _traverse_edges(first: int, length: int, edges: Dict[int, List[int]]) -> List[int]:
    generated = [first]
    pointers = {symbol: 0 for symbol in edges}
    for _ in range(length - 1):
        last = generated[-1]
        generated.append(edges[last][pointers[last]])
        pointers[last] += 1
    return generated


def dinucleotide_shuffle(seq: Sequence, rng: np.random.Generator) -> Sequence:
    """Permutation of ``seq`` with identical dinucleotide counts."""
    codes = seq.bases.tolist()
    if len(codes) < 3:
        return Sequence(seq.id, seq.bases)
    edges = _prepare_edges(codes)
    _shuffle_edges(edges, rng)
    shuffled = _traverse_edges(codes[0], len(codes), edges)
    return Sequence(seq.id, np.array(shuffled, dtype=np.uint8))


def shuffle_background(fg: SequenceSet, seed: SeedLike, suffix: str = "_shuf") -> SequenceSet:
    """
    Background set built from per-sequence dinucleotide shuffles of ``fg``.

    Lengths and mono- and dinucleotide composition of every sequence are kept.
    """
    if len(fg) == 0:
        raise EmptyInput("cannot shuffle an empty foreground set")

    rng = np.random.default_rng(seed)
    shuffled = []
    for seq in fg:
        permuted = dinucleotide_shuffle(seq, rng)
        shuffled.append(Sequence(f"{seq.id}{suffix}", permuted.bases))
    return SequenceSet(SequenceRole.BACKGROUND, tuple(shuffled), fg.subset_label)
