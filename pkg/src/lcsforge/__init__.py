"""lcsforge: exact, desk-scale computations around free-group automorphisms.

Subpackages cover freely reduced words, IA automorphisms with generator
witnesses, the truncated Magnus embedding (lower-central-series depth and
Johnson filtration level), commuting-subgroup axioms for the IA family,
subset-disjointness graphs with path witnesses, the KMM sufficient criterion
for BNS membership with a right-angled Artin group oracle, and the degree-one
Johnson homomorphism with its integral linear-group action.
"""

__version__ = "0.1.0"
