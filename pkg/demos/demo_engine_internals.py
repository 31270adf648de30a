#!/usr/bin/env python3
"""A look inside the trace engine.

The operators come from threading basis vectors of an exterior-power
module through a product of two-term factors and collecting one word per
closed path.  This demo prints the words for small cases and shows the
intermediate symbolic-character form whose coefficients live in the
commutative subalgebra generated by the matched letter pairs.
"""

import json

from qtoda.engine import (
    EngineConfig, expand_central_words, whittaker_reduce, words_to_json,
)
from qtoda.qrep import fundamental_rep

print("Words for the vector representation of affine sl(3):")
cfg = EngineConfig(n=3, k=1, affine=True)
rep = fundamental_rep(3, 1, affine=True)
words = expand_central_words(rep, cfg)
for w in words:
    print("  pre=%s f=%s e=%s post=%s coeff=%s"
          % (list(w.pre), list(w.f_nodes), list(w.e_nodes), list(w.post),
             w.coeff.text()))

print()
print("The same words as the debug JSON dump:")
print(json.dumps(words_to_json(words)[:2], indent=2))

print()
print("Keeping the characters symbolic exhibits the commutative")
print("subalgebra structure: one operator block per matched letter set.")
graded = whittaker_reduce(words, cfg, symbolic_beta=True)
for letters in sorted(graded):
    print("  letters %-8s -> %s" % (list(letters), graded[letters].text()))

print()
print("Substituting the character normalization (-1 per finite node,")
print("-K for the affine node) reassembles the operator:")
total = None
for letters, part in graded.items():
    beta = None
    scal = part
    for i in letters:
        scal = scal * cfg.beta[i]
    total = scal if total is None else total + scal
print(total.text())
