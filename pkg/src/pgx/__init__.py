"""Classification toolkit for 2-generated non-abelian cyclic-by-abelian finite p-groups.

Submodules:
    modarith     exact modular / p-adic primitives
    invariants   invariant tuples, validity conditions, presentation parameters
    enumeration  exhaustive tuple / presentation generators
    group        normal-form group arithmetic on exponent triples
    classify     recover the invariant tuple from a constructed group
    iso_oracle   brute-force isomorphism testing
    cli          command-line front end
"""

__version__ = "0.1.0"
