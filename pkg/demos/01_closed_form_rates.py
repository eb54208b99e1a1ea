"""
Closed-form rate bounds for thermal-loss and amplifier channels
===============================================================

A one-mode Gaussian channel is pinned down by its transmission tau and the
environment temperature nbar (or equivalently the scaled noise
eps = 2 nbar |1 - tau|).  Three secret-key quantities come in closed form:
the reverse bound e_r, the forward single-use rate q1g, and the achievable
rate r_rev of the reverse homodyne protocol.
"""

from gausskey import make_canonical, rate_report

# A half-transparent pure-loss channel: the textbook anchor point.  The
# reverse bound is exactly 1 bit per use and the homodyne protocol achieves
# exactly half of it.
ch = make_canonical(0.5, nbar=0.0)
report = rate_report(ch)
print(f"tau=0.5 nbar=0 ({ch.class_label}):")
print(f"  e_r   = {report.e_r}")
print(f"  q1g   = {report.q1g}")
print(f"  r_rev = {report.r_rev}")

# At zero temperature that factor of two is exact for every transmission:
# both rates reduce to logarithms of the same distance d = |1 - tau|.
print("\nzero-temperature factor of two:")
for tau in (0.1, 0.3, 0.7, 0.9, 1.5):
    r = rate_report(make_canonical(tau, nbar=0.0))
    print(f"  tau={tau:4}  e_r={r.e_r:.6f}  r_rev={r.r_rev:.6f}  ratio={r.e_r / r.r_rev}")

# Thermal noise eats both bounds.  The report also carries the mixing
# parameter lambda and the environment variance w behind r_rev.
print("\nthermal noise at tau=0.5:")
for nbar in (0.0, 0.1, 0.25, 0.5):
    r = rate_report(make_canonical(0.5, nbar=nbar))
    print(
        f"  nbar={nbar:4}  e_r={r.e_r:.6f}  r_rev={r.r_rev:.6f}  "
        f"lambda={r.lam:.6f}  w={r.w}"
    )

# An amplifier (tau > 1) supports a forward strategy as well; far above
# tau = 2 only the forward rate survives.
print("\namplifiers:")
for tau in (1.5, 2.0, 3.0):
    r = rate_report(make_canonical(tau, nbar=0.0))
    print(f"  tau={tau:4}  e_r={r.e_r:.6f}  q1g={r.q1g:.6f}  r_rev={r.r_rev:.6f}")
