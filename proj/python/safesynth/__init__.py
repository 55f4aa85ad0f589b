"""Safety synthesis for aag circuits with controllable_ inputs."""

from ._core import (
    AigFile,
    AigerError,
    explicit_solve,
    gen_cnt,
    parse_aag,
    random_circuit,
    solve,
    synthesize,
    verify_closed,
)

__all__ = [
    "AigFile",
    "AigerError",
    "explicit_solve",
    "gen_cnt",
    "parse_aag",
    "random_circuit",
    "solve",
    "synthesize",
    "verify_closed",
]
