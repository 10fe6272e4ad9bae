#!/usr/bin/env python3
"""
Center verdict types

A CenterVerdict is the outcome of applying one criterion (or the whole
classification chain) to a candidate point, together with the numbers that
witness it.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..errors import TransientScopeError


class NotApplicable(TransientScopeError):
    """A criterion's structural hypotheses do not hold for this point"""
    pass


class Decision(Enum):
    Center = "Center"
    NotCenter = "NotCenter"
    Inconclusive = "Inconclusive"


class Criterion(Enum):
    StableExclusion = "StableExclusion"
    LinearEigenspace = "LinearEigenspace"
    GradientEigvecLinear = "GradientEigvecLinear"
    GradientEigvecH1 = "GradientEigvecH1"
    GradientEigvecH2 = "GradientEigvecH2"
    PerronFrobenius = "PerronFrobenius"
    HessianFlatness = "HessianFlatness"
    Empirical = "Empirical"


@dataclass
class CenterVerdict:
    """
    Decision of one criterion with its certificate

    Attributes:
        decision: Center / NotCenter / Inconclusive
        criterion: Criterion that produced the decision
        certificate: Named reals witnessing the hypotheses (eigenvalue,
            spectral radius and norm, gradient-eigenvector product, ...)
        margins: Relative slack of each strict inequality that was checked
        empirical: True when the decision is simulation evidence, not proof
        vectors: Named vectors (eigenvector, Perron vector, location)
        diagnostics: Messages from criteria that were skipped or failed
        attempts: Verdicts of every criterion tried by classify, in order
    """
    decision: Decision
    criterion: Criterion
    certificate: Dict[str, float] = field(default_factory=dict)
    margins: Dict[str, float] = field(default_factory=dict)
    empirical: bool = False
    vectors: Dict[str, Tuple[float, ...]] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    attempts: List['CenterVerdict'] = field(default_factory=list)

    @property
    def is_center(self) -> bool:
        return self.decision is Decision.Center

    def add_vector(self, name: str, vector) -> None:
        self.vectors[name] = tuple(float(c) for c in np.asarray(vector, dtype=float).reshape(-1))

    def certificate_for(self, criterion: Criterion) -> Optional['CenterVerdict']:
        """The attempt made with a given criterion, if classify tried it"""
        if self.criterion is criterion and not self.attempts:
            return self
        for attempt in self.attempts:
            if attempt.criterion is criterion:
                return attempt
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'decision': self.decision.value,
            'criterion': self.criterion.value,
            'empirical': self.empirical,
            'certificate': {k: float(v) for k, v in self.certificate.items()},
            'margins': {k: float(v) for k, v in self.margins.items()},
            'vectors': {k: list(v) for k, v in self.vectors.items()},
            'diagnostics': list(self.diagnostics),
            'attempts': [a.to_dict() for a in self.attempts],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CenterVerdict':
        return cls(
            decision=Decision(data['decision']),
            criterion=Criterion(data['criterion']),
            certificate={k: float(v) for k, v in data.get('certificate', {}).items()},
            margins={k: float(v) for k, v in data.get('margins', {}).items()},
            empirical=bool(data.get('empirical', False)),
            vectors={k: tuple(float(c) for c in v) for k, v in data.get('vectors', {}).items()},
            diagnostics=list(data.get('diagnostics', [])),
            attempts=[cls.from_dict(a) for a in data.get('attempts', [])],
        )
