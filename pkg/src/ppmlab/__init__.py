"""PPM*, bounded PPM and LZ78 on a normal sequence built from de Bruijn strings."""

from .coder import CodeOutput, decode, encode
from .debruijn import DeBruijnString, ResourceLimitError, martin_db, shift, verify_db
from .lz78 import decode_lz, encode_lz, parse
from .model import BoundedModel, ContextEntry, Emission, ModelConfig, StarModel, build_model
from .sequence import occ, occ_block, prefix, prefix_through, segment, stream

__all__ = [
    "BoundedModel", "CodeOutput", "ContextEntry", "DeBruijnString", "Emission",
    "ModelConfig", "ResourceLimitError", "StarModel", "build_model", "decode",
    "decode_lz", "encode", "encode_lz", "martin_db", "occ", "occ_block", "parse",
    "prefix", "prefix_through", "segment", "shift", "stream", "verify_db",
]
