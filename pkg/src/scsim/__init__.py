"""Bit-exact simulator for stochastic-computing bitstream circuits."""
from .convert import RangeError, d_to_s, generate, regenerate, s_to_d
from .core import Bitstream, Encoding, LengthMismatch, bias, scc, scc_counts, value
from .correlate import (
    Decorrelator,
    Desynchronizer,
    IsolatorPair,
    Synchronizer,
    compose_series,
    decorrelate,
    run_pairwise,
)
from .ops import desync_sat_add, sync_max, sync_min
from .pgm import GrayImage, read_pgm, write_pgm
from .pipeline import PipelineConfig, reference_pipeline, run_pipeline
from .rng import RngConfig, RngStream, parse_rng

__all__ = [
    "Bitstream", "Encoding", "LengthMismatch", "value", "scc", "scc_counts", "bias",
    "RngConfig", "RngStream", "parse_rng",
    "RangeError", "d_to_s", "s_to_d", "generate", "regenerate",
    "Synchronizer", "Desynchronizer", "Decorrelator", "IsolatorPair", "compose_series",
    "decorrelate", "run_pairwise",
    "sync_max", "sync_min", "desync_sat_add",
    "GrayImage", "read_pgm", "write_pgm",
    "PipelineConfig", "run_pipeline", "reference_pipeline",
]
