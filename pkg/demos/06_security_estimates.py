"""
Concrete security estimates
===========================

The companion `gadgetforge-estimator` package (in estimator/) reproduces
the published Core-SVP security cells: primal key recovery with optional
zero-guessing and row-dropping, and nearest-colattice forgery in the
twisted norm.  It is a separate package; install it with

    pip install -e estimator/ --no-build-isolation
"""

try:
    from gadget_estimator import format_table, report_tables
except ImportError:
    raise SystemExit("install the estimator first: "
                     "pip install -e estimator/ --no-build-isolation")

entries = report_tables()
print(format_table(entries))

worst = max(abs(d) for e in entries for d in e["delta"].values())
print("\nlargest deviation from the published cells: %d bit(s)" % worst)
