"""Python access to the polyalab core.

Scalars come back as decimal strings; reports come back as dicts.
"""
import json as _json

from . import _polyalab
from ._polyalab import (
    PolyalabError,
    e_values,
    eval,
    h_values,
    hciz_det,
    hciz_series,
    maclaurin_derivatives,
    precision_bits,
    set_precision_bits,
)


def _report(fn):
    def wrapper(*args, **kwargs):
        return _json.loads(fn(*args, **kwargs))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


check_tn = _report(_polyalab.check_tn)
check_tp = _report(_polyalab.check_tp)
karlin_sweep = _report(_polyalab.karlin_sweep)
wallis_sweep = _report(_polyalab.wallis_sweep)
gamma_sweep = _report(_polyalab.gamma_sweep)
lambda_d_boundary = _report(_polyalab.lambda_d_boundary)
recover_from_moments = _report(_polyalab.recover_from_moments)
recover_from_maclaurin = _report(_polyalab.recover_from_maclaurin)
arithmetic_progression_power = _report(_polyalab.arithmetic_progression_power)
mbeta_power_test = _report(_polyalab.mbeta_power_test)
hw_poly_rigidity = _report(_polyalab.hw_poly_rigidity)
falsify_preserver = _report(_polyalab.falsify_preserver)


def kernel(family, **params):
    """JSON text for a kernel, e.g. kernel("HW", alpha=[1, 2])."""
    doc = {"family": family}
    if params:
        doc["params"] = params
    return _json.dumps(doc)
