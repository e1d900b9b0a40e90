# # Running the property suite
#
# Every inequality and identity is checked on a seeded random ensemble.  The
# report lists, per property, how many trials ran and the worst normalized
# slack seen.

from traceclass import SuiteConfig, run_suite, shift_report

report = run_suite(SuiteConfig(dims=(2, 4), trials=20, seed=42))
for rec in report.records:
    flag = "ok  " if rec.passed else "FAIL"
    print(f"{flag} {rec.property_id:<24} {rec.trials_run:>4} trials  max slack {rec.max_violation: .2e}")
print("all passed:", report.passed)

# ## The shift: why traces need absolute summability
#
# The shift has zero diagonal in the standard basis while its trace norm grows
# like n - 1.  In infinite dimensions that trace norm diverges.

for n in (2, 8, 64):
    rec = shift_report(n)
    print(f"n={n:<3} sum |<Se_k, e_k>| = {rec['abs_diag_sum']}, ||S||_1 = {rec['trace_norm']:.1f}")
