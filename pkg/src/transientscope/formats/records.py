#!/usr/bin/env python3
"""
JSON records

Verdict and transient-time records written by the CLI. Field names are
stable; floats are emitted with Python's shortest round-trip repr.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..core.dynamics import TransientTimeResult
from ..criteria.fixed_points import FixedPoint
from ..criteria.verdicts import CenterVerdict


def verdict_record(model_id: str, observable: str, fp: FixedPoint, verdict: CenterVerdict,
                   label: Optional[str] = None) -> Dict[str, Any]:
    """
    Record of one classified point

    Keys: model, observable, label, fixed_point {location, residual,
    stability, spectral}, verdict {decision, criterion, empirical,
    certificate, margins, vectors, diagnostics, attempts}
    """
    return {
        'model': model_id,
        'observable': observable,
        'label': label,
        'fixed_point': fp.to_dict(),
        'verdict': verdict.to_dict(),
    }


def transient_time_record(result: TransientTimeResult, initial_state,
                          classification: Optional[str] = None,
                          T: Optional[int] = None) -> Dict[str, Any]:
    record = result.to_dict()
    record['initial_state'] = [float(c) for c in initial_state]
    if T is not None:
        record['T'] = int(T)
        record['classification'] = classification
    return record


def write_json(path, payload) -> Path:
    path = Path(path)
    with open(path, 'w') as f:
        json.dump(payload, f, indent=2)
        f.write('\n')
    return path


def read_json(path) -> Any:
    with open(path, 'r') as f:
        return json.load(f)


def read_verdicts(path) -> List[CenterVerdict]:
    return [CenterVerdict.from_dict(record['verdict']) for record in read_json(path)]
