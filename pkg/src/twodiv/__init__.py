"""
twodiv: 2-adic divisibility of canonical bases f_{k,m} of weakly holomorphic
modular forms, weights k in {12, 16, 18, 20, 22, 26}.

  qseries    – exact truncated Laurent series
  level1     – E4, E6, Delta, j and the canonical basis f_{k,m}
  level2     – Gamma_0(2) forms, alpha_k / theta_k, holomorphic bases
  operators  – U_p, V_p, T_p and their coefficient identities
  dissection – Kolberg-generator expressions and their two-dissection
  harness    – main-theorem sweep, duality, sharpness (+ lemmas, pipeline)
  report     – JSON / YAML / Jinja2 table output
"""

__version__ = "0.1.0"
