"""Equivalent CEV and BS volatilities of the SABR model, CEV pricing, and mass at zero."""

from .errors import DomainError, NumericalError
from .sabr_vols import (
    BaseModel, Method, SabrParams, Scale, StdInputs, VolQuote, equivalent_vol, sabr_price, standardize,
)
from .base_models import bachelier_price, black_price, cev_price, implied_black_vol
from .mass_zero import MassResult, decay_time_t0, dmhj_vol, mass_at_zero, zero_strike_cev_vol

__version__ = '0.1.0'
