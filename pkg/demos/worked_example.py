"""
Scoring a pattern and its windows
=================================

A five-letter pattern is reduced to one number and compared with every
five-letter window of a short text.
"""

from valuegrep import FormulaSpec, default_table, pattern_value, window_values_rolling

table = default_table()
spec = FormulaSpec.from_equation(1, k=1)  # plain sum of letter values

# the pattern's score
print("V(ABCDE) =", round(pattern_value(spec, table, "ABCDE"), 9))

# every window of the text, computed incrementally
scores = window_values_rolling(spec, table, "ABCDEFGH", 5)
for i, v in enumerate(scores.tolist()):
    print(f"window {i} {'ABCDEFGH'[i:i + 5]}: {v:.3f}")

# position-sensitive weights separate windows that a plain sum cannot
spec5 = FormulaSpec.from_equation(5, k=2)
print("eq5,k=2:", [round(v, 3) for v in window_values_rolling(spec5, table, "ABCDEFGH", 5).tolist()])
