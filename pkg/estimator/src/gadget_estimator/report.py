"""Attack reports and the comparison table against the published numbers."""

from dataclasses import asdict, dataclass

from . import core, params

# published security cells: (key recovery C/Q, forgery C/Q)
PUBLISHED = {
    "robin-701": ((116, 105), (130, 118)),
    "robin-1061": ((181, 165), (214, 195)),
    "robin-1279": ((228, 207), (264, 240)),
    "eagle-512": ((79, 71), (83, 75)),
    "eagle-1024": ((176, 160), (189, 172)),
}


@dataclass(frozen=True)
class AttackReport:
    scheme: str
    paramset: str
    keyrec_classical: int
    keyrec_quantum: int
    forge_classical: int
    forge_quantum: int
    keyrec_beta: int
    forge_beta: int
    best_k_zeros: int
    best_l_rows: int
    best_forge_k: int

    def as_dict(self):
        return asdict(self)


def estimate_set(row):
    kr = core.estimate_key_recovery(row)
    fg = core.estimate_forgery(row)
    return AttackReport(
        scheme=row.scheme, paramset=row.name,
        keyrec_classical=kr.bits_classical, keyrec_quantum=kr.bits_quantum,
        forge_classical=fg.bits_classical, forge_quantum=fg.bits_quantum,
        keyrec_beta=kr.beta, forge_beta=fg.beta,
        best_k_zeros=kr.k, best_l_rows=kr.l, best_forge_k=fg.k)


def report_tables(names=None):
    """Reports plus per-cell deltas against the published tables."""
    names = names or sorted(params.BUILTIN)
    out = []
    for name in names:
        rep = estimate_set(params.get_row(name))
        entry = rep.as_dict()
        if name in PUBLISHED:
            (kc, kq), (fc, fq) = PUBLISHED[name]
            entry["published"] = {"keyrec": [kc, kq], "forge": [fc, fq]}
            entry["delta"] = {
                "keyrec_classical": rep.keyrec_classical - kc,
                "keyrec_quantum": rep.keyrec_quantum - kq,
                "forge_classical": rep.forge_classical - fc,
                "forge_quantum": rep.forge_quantum - fq,
            }
        out.append(entry)
    return out


def format_table(entries):
    lines = ["%-12s %-22s %-22s %-10s" % ("set", "key recovery (C/Q)",
                                          "forgery (C/Q)", "blocksizes")]
    for e in entries:
        kr = "%d / %d" % (e["keyrec_classical"], e["keyrec_quantum"])
        fg = "%d / %d" % (e["forge_classical"], e["forge_quantum"])
        if "published" in e:
            pk = e["published"]["keyrec"]
            pf = e["published"]["forge"]
            kr += "  (pub %d/%d)" % tuple(pk)
            fg += "  (pub %d/%d)" % tuple(pf)
        lines.append("%-12s %-22s %-22s b=%d/%d" % (
            e["paramset"], kr, fg, e["keyrec_beta"], e["forge_beta"]))
        if "delta" in e:
            d = e["delta"]
            lines.append("%-12s   delta: keyrec %+d/%+d, forge %+d/%+d" % (
                "", d["keyrec_classical"], d["keyrec_quantum"],
                d["forge_classical"], d["forge_quantum"]))
    return "\n".join(lines)
