# motif_elites/core/meme.py - MEME minimal motif format reader and writer
# Only the minimal text format is handled; the alphabet is always ACGT.

# --- Standard Library Imports ---
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence as SequenceType, Union

# --- Third-Party Imports ---
import numpy as np

# --- Local Imports ---
from .constants import ALPHABET, MEME_ROW_SUM_RANGE, PWM_FLOOR
from .errors import DuplicateId, InvalidName, InvalidParams, MalformedMatrix, NotMemeFormat
from .logging_config import get_logger
from .pwm import PWM
from .sequences import BackgroundDistribution

logger = get_logger("meme")

MEME_VERSION = "4"
_MATRIX_KEYS = re.compile(r"(\w+)\s*=\s*(\S+)")


@dataclass(frozen=True, eq=False)
class MemeMotifRecord:
    """
    One MOTIF block as read from a MEME file.

    Attributes:
        name (str): Motif identifier (first token after MOTIF).
        width (int): Number of matrix rows.
        nsites (Optional[int]): Site count from the matrix header, if given.
        probs (np.ndarray): width x 4 probabilities, ACGT column order, as parsed.
        alt_name (Optional[str]): Second token after MOTIF, if any.
    """

    name: str
    width: int
    nsites: Optional[int]
    probs: np.ndarray
    alt_name: Optional[str] = None
    alphabet_order: str = ALPHABET

    def to_pwm(self) -> PWM:
        """Floor and renormalize the parsed rows into a PWM of length ``width``."""
        return PWM.from_matrix(self.probs)


def _parse_row(motif: str, row: int, line: str) -> List[float]:
    tokens = line.split()
    try:
        values = [float(token) for token in tokens]
    except ValueError:
        raise MalformedMatrix(motif, row, f"non-numeric entry in {line.strip()!r}")
    if len(values) != 4:
        raise MalformedMatrix(motif, row, f"expected 4 values, got {len(values)}")
    total = sum(values)
    lo, hi = MEME_ROW_SUM_RANGE
    if not lo <= total <= hi or any(v < 0 for v in values):
        raise MalformedMatrix(motif, row, f"row sums to {total:.4f}")
    return values


def _looks_numeric(line: str) -> bool:
    tokens = line.split()
    if not tokens:
        return False
    try:
        float(tokens[0])
    except ValueError:
        return False
    return True


def _parse_background(line: str) -> Optional[BackgroundDistribution]:
    tokens = line.split()
    freqs: Dict[str, float] = {}
    for letter, value in zip(tokens[::2], tokens[1::2]):
        try:
            freqs[letter.upper()] = float(value)
        except ValueError:
            return None
    if set(freqs) != set(ALPHABET):
        return None
    probs = np.array([freqs[base] for base in ALPHABET])
    if not np.all(np.isfinite(probs)) or probs.min() < 0 or probs.sum() <= 0:
        return None
    if probs.min() < PWM_FLOOR:
        # Zero frequencies are legal in MEME files but would make log-odds infinite
        logger.debug(f"Background frequencies {probs.tolist()} floored at {PWM_FLOOR}")
        probs = np.maximum(probs / probs.sum(), PWM_FLOOR)
    return BackgroundDistribution(tuple(probs / probs.sum()))


def _decode(text: Union[str, bytes]) -> str:
    if isinstance(text, str):
        return text
    try:
        return text.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise NotMemeFormat(f"not UTF-8 text ({e.reason} at byte {e.start})") from e


def _check_header(lines: List[str]) -> None:
    if not any(line.strip().startswith("MEME version") for line in lines):
        raise NotMemeFormat()


def parse_meme(text: Union[str, bytes]) -> List[MemeMotifRecord]:
    """
    Parse every MOTIF block of a MEME minimal-format file, in file order.

    Strand and background lines are accepted and ignored here.

    Raises:
        NotMemeFormat: No "MEME version" header, or bytes that are not UTF-8.
        MalformedMatrix: A matrix row does not hold 4 numbers summing to ~1,
            or the row count disagrees with the declared width.
    """
    lines = _decode(text).splitlines()
    _check_header(lines)

    records: List[MemeMotifRecord] = []
    name: Optional[str] = None
    alt_name: Optional[str] = None
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if line.startswith("MOTIF"):
            tokens = line.split()
            if len(tokens) < 2:
                raise MalformedMatrix("<unnamed>", 0, "MOTIF line without a name")
            name = tokens[1]
            alt_name = tokens[2] if len(tokens) > 2 else None
            continue
        if not line.startswith("letter-probability matrix"):
            continue
        if name is None:
            raise MalformedMatrix("<unnamed>", 0, "matrix outside a MOTIF block")

        header = dict(_MATRIX_KEYS.findall(line.split(":", 1)[1] if ":" in line else ""))
        width = int(float(header["w"])) if "w" in header else None
        nsites = int(float(header["nsites"])) if "nsites" in header else None

        rows: List[List[float]] = []
        while i < len(lines):
            row_line = lines[i].strip()
            if width is not None and len(rows) == width:
                break
            if not row_line:
                if rows:
                    break
                i += 1
                continue
            if width is None and not _looks_numeric(row_line):
                break
            if width is not None and row_line.startswith(("MOTIF", "URL", "letter-probability")):
                break
            rows.append(_parse_row(name, len(rows), row_line))
            i += 1

        if not rows:
            raise MalformedMatrix(name, 0, "matrix has no rows")
        if width is not None and len(rows) != width:
            raise MalformedMatrix(name, len(rows), f"expected {width} rows, found {len(rows)}")
        records.append(
            MemeMotifRecord(
                name=name,
                width=len(rows),
                nsites=nsites,
                probs=np.array(rows, dtype=np.float64),
                alt_name=alt_name,
            )
        )
        name, alt_name = None, None

    logger.debug(f"Parsed {len(records)} MEME motif(s)")
    return records


def parse_meme_background(text: Union[str, bytes]) -> Optional[BackgroundDistribution]:
    """Background letter frequencies of a MEME file, or None when absent."""
    lines = _decode(text).splitlines()
    _check_header(lines)
    for index, line in enumerate(lines):
        if line.strip().startswith("Background letter frequencies"):
            for candidate in lines[index + 1 :]:
                if candidate.strip():
                    return _parse_background(candidate)
    return None


def read_meme(path: Union[str, Path]) -> List[MemeMotifRecord]:
    records = parse_meme(Path(path).read_bytes())
    logger.info(f"Read {len(records)} motif(s) from {path}")
    return records


def to_pwm(record: MemeMotifRecord) -> PWM:
    return record.to_pwm()


def _format_probability(value: float, precision: Optional[int]) -> str:
    if precision is None:
        return repr(float(value))
    return f"{value:.{precision}f}"


def _check_names(names: Iterable[str]) -> None:
    seen = set()
    for name in names:
        if not name or any(ch.isspace() for ch in name):
            raise InvalidName(name)
        if name in seen:
            raise DuplicateId(name)
        seen.add(name)


def write_meme(
    pwms: SequenceType[PWM],
    names: SequenceType[str],
    precision: Optional[int] = None,
    bg: Optional[BackgroundDistribution] = None,
    nsites: int = 20,
) -> str:
    """
    Render PWMs as a MEME minimal-format file.

    ``precision=None`` writes the shortest text that parses back to the exact
    float, so re-read motifs score identically.

    Raises:
        InvalidName: A name is empty or contains whitespace.
        DuplicateId: A name is repeated.
    """
    if len(pwms) != len(names):
        raise InvalidParams(f"{len(pwms)} PWMs but {len(names)} names")
    _check_names(names)

    background = (bg or BackgroundDistribution.uniform()).as_array()
    lines = [
        f"MEME version {MEME_VERSION}",
        "",
        f"ALPHABET= {ALPHABET}",
        "",
        "strands: + -",
        "",
        "Background letter frequencies",
        " ".join(f"{base} {_format_probability(p, precision)}" for base, p in zip(ALPHABET, background)),
        "",
    ]
    for pwm, name in zip(pwms, names):
        lines.append(f"MOTIF {name}")
        lines.append(f"letter-probability matrix: alength= 4 w= {pwm.length} nsites= {nsites} E= 0")
        for row in pwm.probs:
            lines.append(" " + " ".join(_format_probability(p, precision) for p in row))
        lines.append("")
    return "\n".join(lines)
