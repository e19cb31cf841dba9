"""
Run configuration models

Every CLI run is described by a RunConfig; its ``model_dump`` is written next
to each output file as ``<output>.meta.json`` so runs can be replayed.
"""

from typing import List, Literal, Optional, Tuple
import json
import logging

from pydantic import BaseModel, Field, field_validator, model_validator

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 30
DEFAULT_GAMMA = 3
DEFAULT_GIRTH = 8
DEFAULT_QC_COLS = 12
DEFAULT_QC_P = 64

DecoderKind = Literal['two-bit', 'parallel-bf', 'gallager-b', 'cascade']


class DecoderSpec(BaseModel):
    """Which decoder to run and with what limits"""

    kind: DecoderKind = 'two-bit'
    rule: Optional[str] = Field('f1', description="Built-in rule name or rule file path")
    max_iter: int = Field(DEFAULT_MAX_ITER, ge=1)
    cascade: Optional[List[Tuple[str, int]]] = Field(
        None, description="Ordered (rule, iteration limit) pairs")
    cascade_file: Optional[str] = None
    threshold: int = Field(2, ge=1, description="Gallager-B flip threshold")
    detect_cycles: bool = False
    label: Optional[str] = None

    @model_validator(mode='after')
    def _check_kind(self) -> 'DecoderSpec':
        if self.kind == 'cascade':
            if not self.cascade and not self.cascade_file:
                raise ValueError("A cascade decoder needs 'cascade' members or a 'cascade_file'")
            for name, limit in self.cascade or []:
                if limit < 1:
                    raise ValueError(f"Cascade member '{name}' has iteration limit {limit} < 1")
        if self.kind == 'two-bit' and not self.rule:
            raise ValueError("A two-bit decoder needs a rule")
        return self

    @property
    def name(self) -> str:
        """Label used in CSV rows and reports"""
        if self.label:
            return self.label
        if self.kind == 'two-bit':
            return str(self.rule)
        if self.kind == 'cascade':
            if self.cascade:
                return "cascade[" + ",".join(f"{r}:{l}" for r, l in self.cascade) + "]"
            return f"cascade[{self.cascade_file}]"
        return self.kind


class StopCriteria(BaseModel):
    """Frame loop stops at whichever limit is reached first"""

    max_frames: int = Field(10_000, ge=1)
    target_frame_errors: Optional[int] = Field(100, ge=1)


class EnumerationConfig(BaseModel):
    """Parameters of a failure-graph enumeration"""

    rule: str = 'f1'
    k: int = Field(..., ge=1)
    l: int = Field(15, ge=1)
    n_max: int = Field(..., ge=1)
    gamma: int = Field(DEFAULT_GAMMA, ge=2)
    girth_min: int = Field(DEFAULT_GIRTH, ge=4)
    max_check_degree: Optional[int] = Field(None, ge=1)
    max_nodes: Optional[int] = Field(None, ge=1, description="Budget on expanded nodes")

    @model_validator(mode='after')
    def _check_sizes(self) -> 'EnumerationConfig':
        if self.n_max < self.k:
            raise ValueError(f"n_max ({self.n_max}) must be >= k ({self.k})")
        if self.girth_min % 2:
            raise ValueError(f"girth_min must be even, got {self.girth_min}")
        return self


class RunConfig(BaseModel):
    """Full description of one CLI invocation"""

    command: str
    alist: Optional[str] = None
    qc_rows: int = DEFAULT_GAMMA
    qc_cols: Optional[int] = None
    qc_p: Optional[int] = None
    decoders: List[DecoderSpec] = Field(default_factory=list)
    alphas: List[float] = Field(default_factory=list)
    stop: Optional[StopCriteria] = None
    seed: int = 0
    outputs: List[str] = Field(default_factory=list)
    enumeration: Optional[EnumerationConfig] = None
    threads: int = Field(1, ge=1)
    extra: dict = Field(default_factory=dict)

    @field_validator('alphas')
    @classmethod
    def _check_alphas(cls, alphas: List[float]) -> List[float]:
        for alpha in alphas:
            if not 0.0 <= alpha <= 1.0:
                raise ValueError(f"Crossover probability {alpha} outside [0, 1]")
        return alphas


def write_metadata(output_path: str, config: BaseModel, **fields) -> str:
    """Write ``<output>.meta.json`` with the config echo plus extra fields; returns its path"""
    meta_path = f"{output_path}.meta.json"
    payload = {'config': config.model_dump(mode='json'), **fields}
    with open(meta_path, 'w', encoding='utf-8') as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
    logger.info(f"wrote metadata {meta_path}")
    return meta_path
