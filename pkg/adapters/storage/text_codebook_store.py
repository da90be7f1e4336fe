"""
Text codebook store adapter.

A block is a header line ``M;d;distortion;c;heuristic;seed`` followed by M
pattern lines. A per-cardinality family is its blocks concatenated in
increasing cardinality.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from adapters.storage.pattern_codec import format_pattern, parse_pattern
from core.entities.patterns import Codebook, CodebookFamily, DistortionSpec
from core.exceptions import InputError
from core.ports.codebook_store import CodebookStorePort, StoredCodebook

logger = logging.getLogger(__name__)


def _format_header(codebook: Codebook) -> str:
    spec = codebook.distortion
    seed = codebook.metadata.get("seed")
    return ";".join(
        [
            str(codebook.size),
            str(codebook.dim),
            spec.label,
            repr(float(spec.cutoff)) if spec.is_usospa else "",
            str(codebook.metadata.get("heuristic", "")),
            "" if seed is None else str(seed),
        ]
    )


def _parse_header(line: str, line_number: int) -> Tuple[int, int, DistortionSpec, str, Optional[int]]:
    fields = line.strip().split(";")
    if len(fields) != 6:
        raise InputError(f"line {line_number}: codebook header needs 6 fields, got {len(fields)}")
    try:
        size, dim = int(fields[0]), int(fields[1])
        cutoff = float(fields[3]) if fields[3] else None
        seed = int(fields[5]) if fields[5] else None
    except ValueError as e:
        raise InputError(f"line {line_number}: malformed codebook header {line.strip()!r}") from e
    spec = DistortionSpec(kind=fields[2], cutoff=cutoff)
    return size, dim, spec, fields[4], seed


class TextCodebookStoreAdapter(CodebookStorePort):
    """Stores codebooks as plain text files."""

    def dumps(self, codebook: StoredCodebook) -> str:
        blocks = codebook.codebooks.values() if isinstance(codebook, CodebookFamily) else [codebook]
        lines: List[str] = []
        for block in blocks:
            lines.append(_format_header(block))
            lines.extend(format_pattern(codeword) for codeword in block.codewords)
        return "\n".join(lines) + "\n"

    def loads(self, text: str) -> StoredCodebook:
        lines = text.splitlines()
        blocks: List[Codebook] = []
        position = 0
        while position < len(lines):
            if not lines[position].strip():
                position += 1
                continue
            size, dim, spec, heuristic, seed = _parse_header(lines[position], position + 1)
            body = lines[position + 1:position + 1 + size]
            if len(body) != size:
                raise InputError(f"line {position + 1}: block declares {size} codewords, found {len(body)}")
            codewords = tuple(parse_pattern(line) for line in body)
            if any(codeword.dim != dim for codeword in codewords):
                raise InputError(f"line {position + 1}: codeword dimension differs from header d={dim}")
            blocks.append(
                Codebook(codewords=codewords, distortion=spec, metadata={"M": size, "heuristic": heuristic, "seed": seed})
            )
            position += 1 + size
        if not blocks:
            raise InputError("no codebook blocks found")
        if len(blocks) == 1:
            return blocks[0]
        return self._as_family(blocks)

    @staticmethod
    def _as_family(blocks: List[Codebook]) -> CodebookFamily:
        codebooks: Dict[int, Codebook] = {}
        for block in blocks:
            cardinalities = {codeword.cardinality for codeword in block.codewords}
            if len(cardinalities) != 1:
                raise InputError("family blocks must hold a single cardinality each")
            cardinality = cardinalities.pop()
            if cardinality in codebooks:
                raise InputError(f"duplicate family block for cardinality {cardinality}")
            codebooks[cardinality] = block
        specs = {block.distortion for block in blocks}
        if len(specs) != 1:
            raise InputError("family blocks disagree on the distortion")
        first = blocks[0].metadata
        return CodebookFamily(
            codebooks=codebooks,
            distortion=specs.pop(),
            metadata={"heuristic": first.get("heuristic"), "seed": first.get("seed")},
        )

    def save(self, codebook: StoredCodebook, path: str) -> None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.dumps(codebook), encoding="utf-8")
        logger.info("codebook written to %s", target)

    def load(self, path: str) -> StoredCodebook:
        source = Path(path)
        if not source.exists():
            raise InputError(f"codebook file not found: {source}")
        return self.loads(source.read_text(encoding="utf-8"))

    def get_store_type(self) -> str:
        return "text"
