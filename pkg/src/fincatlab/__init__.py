"""fincatlab: a desk-scale workbench for finite categorical model theory.

Subpackages and modules:

  core         table-driven finite categories, monos, sections, and the
               hom-set structure embedding
  cats         built-in concrete categories (finite sets, graphs under
               three morphism classes, vector spaces over a prime field)
               with pushouts and bounded enumeration
  amalgam      amalgams, exact connectedness, types as connected
               components of point categories, universal extensions
  independence candidate independence notions on squares, the axiom
               harness, and the canonicity comparison
  exhaustion   construction categories and the bookkeeping engine that
               exhausts constructible elements
  fo           quantifier-free finite model theory: types, the order
               property, bounded coheir independence, indiscernibles,
               and forbidden-substructure axiomatization
  cli          batch front end over JSON inputs
"""

__version__ = "0.1.0"

from . import amalgam, cats, core, exhaustion, fo, independence, structures

__all__ = ["amalgam", "cats", "core", "exhaustion", "fo", "independence",
           "structures", "__version__"]
