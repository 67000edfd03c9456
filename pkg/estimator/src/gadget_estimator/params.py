"""Parameter rows for the estimator.

Self-contained: the five built-in rows mirror the published tables, and the
same INI-style key-value registry format used by the signing tool can be
loaded on top (GADGETFORGE_PARAMDIR pointing at a file or a directory of
``*.params`` files).  Only the quantities the attacks need are kept.
"""

import configparser
import math
import os
from dataclasses import dataclass
from pathlib import Path

ENV_PARAMDIR = "GADGETFORGE_PARAMDIR"


@dataclass(frozen=True)
class ParamRow:
    name: str
    scheme: str       # "robin" (NTRU, m = 2n) or "eagle" (Ring-LWE, m = 3n)
    n: int
    Q: int
    p: int
    q: int
    a: int
    b: int
    alpha: float
    r: float
    s: float

    @property
    def gamma(self):
        """Twisted-norm weight sqrt(s^2 + (p^2 - 1)/12) / s."""
        return math.sqrt(self.s ** 2 + (self.p ** 2 - 1) / 12.0) / self.s

    @property
    def beta_accept(self):
        """Verification bound 1.04 * sqrt(blocks * n * (s^2 + (p^2-1)/12))."""
        blocks = 2 if self.scheme == "robin" else 3
        return 1.04 * math.sqrt(blocks * self.n *
                                (self.s ** 2 + (self.p ** 2 - 1) / 12.0))

    @property
    def secret_norm(self):
        """||(f, g, -1)|| = sqrt(2(a+b) + 1)."""
        return math.sqrt(2 * (self.a + self.b) + 1)

    @property
    def forge_dim(self):
        return (2 if self.scheme == "robin" else 3) * self.n


BUILTIN = {
    "robin-701": ParamRow("robin-701", "robin", 701, 16384, 2048, 8,
                          176, 175, 1.65, 10.22, 449.8),
    "robin-1061": ParamRow("robin-1061", "robin", 1061, 32768, 4096, 8,
                           266, 265, 1.7, 10.28, 573.8),
    "robin-1279": ParamRow("robin-1279", "robin", 1279, 32768, 4096, 8,
                           320, 319, 1.75, 10.31, 650.4),
    "eagle-512": ParamRow("eagle-512", "eagle", 512, 16000, 2000, 8,
                          128, 128, 1.7, 10.17, 394.2),
    "eagle-1024": ParamRow("eagle-1024", "eagle", 1024, 32400, 2700, 12,
                           256, 256, 1.7, 15.42, 841.5),
}


def parse_registry_file(path):
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    with open(path) as fh:
        cp.read_file(fh)
    rows = {}
    for section in cp.sections():
        sec = cp[section]
        rows[section] = ParamRow(
            name=section, scheme=sec.get("scheme", "").strip().lower(),
            n=sec.getint("n"), Q=sec.getint("Q"), p=sec.getint("p"),
            q=sec.getint("q"), a=sec.getint("a"), b=sec.getint("b"),
            alpha=float(sec["alpha"]), r=float(sec["r"]), s=float(sec["s"]))
    return rows


def _overrides():
    loc = os.environ.get(ENV_PARAMDIR)
    if not loc:
        return {}
    path = Path(loc)
    if path.is_dir():
        rows = {}
        for f in sorted(path.glob("*.params")):
            rows.update(parse_registry_file(f))
        return rows
    return parse_registry_file(path)


def available_names():
    rows = dict(BUILTIN)
    rows.update(_overrides())
    return sorted(rows)


def get_row(name):
    key = name.strip().lower()
    over = {k.lower(): v for k, v in _overrides().items()}
    if key in over:
        return over[key]
    if key in BUILTIN:
        return BUILTIN[key]
    raise KeyError("unknown parameter set %r (known: %s)"
                   % (name, ", ".join(available_names())))
