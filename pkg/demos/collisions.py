"""
Collisions between different strings
====================================

Distinct strings can share a score. A plain sum confuses anagrams;
weighted and signed schemes confuse other families.
"""

import itertools

from valuegrep import FormulaSpec, collision_rate, default_table, find_collisions, pattern_value

table = default_table()

# anagrams always collide under the plain sum
plain = FormulaSpec.from_equation(1)
for p in itertools.permutations("ABC"):
    print("".join(p), round(pattern_value(plain, table, "".join(p)), 9))

# exhaustive search over a small alphabet for each scheme
for eq in range(1, 9):
    spec = FormulaSpec.from_equation(eq, k=1)
    pairs = find_collisions(spec, table, list("ACGT"), 4)
    example = f"{pairs[0].a}/{pairs[0].b}" if pairs else "-"
    print(f"{spec}: {len(pairs):4d} colliding pairs of length 4, e.g. {example}")

# sampled collision rate among random unequal pairs
for spec in (FormulaSpec.from_equation(1), FormulaSpec.from_equation(5, k=2)):
    rate = collision_rate(spec, table, list("ACGT"), 12, samples=20_000, seed=1)
    print(f"{spec}: collision rate at length 12 = {rate:.4f}")
