"""
Value search next to classical matchers
=======================================

The value matcher narrows the text to windows whose score equals the
pattern's, then verifies them literally. The final positions agree with
naive, KMP, Rabin-Karp and Boyer-Moore search.
"""

from valuegrep import (
    FormulaSpec,
    boyer_moore_search,
    default_table,
    kmp_search,
    naive_search,
    rabin_karp_search,
    search,
)

table = default_table()
text, pattern = "CABACBCBABCABAC", "ABC"

report = search(FormulaSpec.from_equation(1), table, text, pattern)
print("candidates:", report.candidates)
print("confirmed: ", report.confirmed)
print("spurious:  ", report.spurious)

print("naive:      ", naive_search(text, pattern))
print("kmp:        ", kmp_search(text, pattern))
print("rabin-karp: ", rabin_karp_search(text, pattern)[0])
print("boyer-moore:", boyer_moore_search(text, pattern)[0])

# a position-weighted scheme keeps far fewer candidates on the same text
for eq, k in [(5, 1), (5, 2), (6, 3)]:
    r = search(FormulaSpec.from_equation(eq, k), table, text, pattern)
    print(f"eq{eq},k={k}: {len(r.candidates)} candidates, {r.spurious_count} spurious")
