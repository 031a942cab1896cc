"""Reference data from the worked gl(2) and gl(1|1) examples, kept verbatim.

These are fixtures to compare against; nothing in the library is built
from them.  Relations are written "lhs - rhs" (each expression = 0) over the
generators a, b, c, d of L = [[a, b], [c, d]].
"""

from __future__ import annotations

LAMBDA = "(q - q^-1)"

RELATIONS_20 = (
    "q*a*b - q^-1*b*a - hbar*b",
    "q*c*a - q^-1*a*c - hbar*c",
    "a*d - d*a",
    f"q*(b*c - c*b) - ({LAMBDA}*a - hbar)*(d - a)",
    f"q*(c*d - d*c) - c*({LAMBDA}*a - hbar)",
    f"q*(d*b - b*d) - ({LAMBDA}*a - hbar)*b",
)

RELATIONS_11 = (
    "q^2*a*b - b*a - q*hbar*b",
    "q^2*c*a - a*c - q*hbar*c",
    "a*d - d*a",
    "b*b",
    "c*c",
    "q^-1*b*c + q*c*b - (q - q^-1)*a*(a - d) - hbar*(a - d)",
    "b*d - d*b - (q^2 - 1)*a*b - q*hbar*b",
    "c*d - d*c + (q^2 - 1)*c*a + q*hbar*c",
)

B_20 = (("q^-1", "0"), ("0", "q^-3"))
C_20 = (("q^-3", "0"), ("0", "q^-1"))
B_11 = (("q^-1", "0"), ("0", "-q^-1"))
C_11 = (("q", "0"), ("0", "-q"))

R_20 = (
    ("q", "0", "0", "0"),
    ("0", "q - q^-1", "1", "0"),
    ("0", "1", "0", "0"),
    ("0", "0", "0", "q"),
)
R_11 = (
    ("q", "0", "0", "0"),
    ("0", "q - q^-1", "1", "0"),
    ("0", "1", "0", "0"),
    ("0", "0", "0", "-q^-1"),
)

TRACES_20 = {1: "q^-3*a + q^-1*d", 2: "q^-3*(a*a + b*c) + q^-1*(c*b + d*d)"}
TRACES_11 = {1: "q*(a - d)", 2: "q*(a*a + b*c - c*b - d*d)"}

NUMERICAL_TRACE_20 = {"a": "1", "b": "0", "c": "0", "d": "1"}
PAIRING_20 = {("a", "a"): "q", ("d", "d"): "q^-1", ("b", "c"): "q^-1", ("c", "b"): "q"}
PAIRING_SL2 = {("b", "c"): "q^-1", ("c", "b"): "q", ("h", "h"): "2_q"}

# the quotient by ell, in generators (b, h, c)
MOTIV = (
    "q^2*h*b - b*h - 2_q*hbar*b",
    "q^2*c*h - h*c - 2_q*hbar*c",
    "(q^2 + 1)*(b*c - c*b) + (q^2 - 1)*h*h - 2_q*hbar*h",
)

# Cayley-Hamilton coefficients (b_0, b_1, b_2) at hbar = 0
CH_20 = ("q^-2*a*d - c*b", "-(q^-2*a + d)", "1")
CH_11 = ("(a - d)*(b*c - a*d) - a*(b*c - c*b)", "-(a*a - d*d + b*c - c*b)", "a - d")

# gl(1|1) super-Lie table, [u, v] for the listed pairs (anticommutator for two odd)
GL11_TABLE = {
    ("a", "b"): "b",
    ("a", "c"): "-c",
    ("a", "d"): "0",
    ("d", "b"): "b",
    ("d", "c"): "-c",
    ("b", "c"): "d - a",
    ("b", "b"): "0",
    ("c", "c"): "0",
}

# quadratic bracket for (1|1), same pairs
QUADRATIC_11 = {
    ("a", "b"): "a*b",
    ("a", "c"): "-a*c",
    ("a", "d"): "0",
    ("d", "b"): "a*b",
    ("b", "b"): "0",
    ("c", "c"): "0",
    ("d", "c"): "-a*c",
    ("b", "c"): "c*b - a*(a - d)",
}

# power sums: (2|0) with eigenvalues mu1, mu2; (1|1) with mu, nu
POWER_SUMS_20 = {
    (0, 1): "q^-1*(mu1 + mu2)",
    (0, 2): "q^-1*(mu1^2 + mu2^2) + (q^-1 - q^-3)*mu1*mu2",
    ("hbar", 1): "q^-1*(mu1 + mu2) - q^-2*hbar",
    ("hbar", 2): "q^-1*(mu1^2 + mu2^2) + (q^-1 - q^-3)*mu1*mu2 - q^-2*hbar*(mu1 + mu2)",
}
POWER_SUMS_11 = {
    (0, 1): "q^-1*mu - q*nu",
    (0, 2): "(mu + nu)*(q^-1*mu - q*nu)",
    ("hbar", 1): "q^-1*mu - q*nu + hbar",
    ("hbar", 2): "(mu + nu)*(q^-1*mu - q*nu) + hbar*(mu + nu)",
}
HYPERBOLOID = "(q^-3 + q^-1)*mu1^2"
