"""Core-SVP security estimation for the compact-gadget signature schemes."""

from .core import (Forgery, Infeasible, KeyRecovery, estimate_forgery,
                   estimate_key_recovery, guess_bits, root_hermite)
from .params import ParamRow, available_names, get_row
from .report import AttackReport, estimate_set, format_table, report_tables

__version__ = "0.1.0"
