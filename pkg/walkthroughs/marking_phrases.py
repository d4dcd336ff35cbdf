"""
Marking noun and verb phrases
=============================

Markup rules insert brackets around the longest matches instead of replacing
them.  Composing two such rules gives a shallow parser.
"""

from fsc import compile_regex, down, load_program
from fsc.apply import apply_down
from fsc.selftest import recipe_source

# d = determiner, a = adjective, n = noun, v = verb
np_marker = compile_regex("(d) a* n+ @-> %[ ... %]")
for w in ["dannvaan", "v", "n", "ddan"]:
    print(w, "->", down(np_marker, w).pop())

# the shipped recipe brackets noun phrases, then verb phrases around them
print(recipe_source("np_vp"))
defs, parser = load_program(recipe_source("np_vp"))
(out,) = apply_down(parser, "dannvaan").outputs
print(" ".join(out))

# two rules in one pass: neither sees the other's output
swap = compile_regex("a+ @-> b, b+ @-> a")
print(down(swap, "aaabba"))
