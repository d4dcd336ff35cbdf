"""
Directed replacement on a small alphabet
========================================

Plain replacement rewrites every way it can.  The directed operators pick one
factorization of the input, so a single-string LOWER gives one output.
"""

from fsc import compile_regex, down
from fsc.oracle import match_spans

upper = "a b | b | b a | a b a"

# simple replacement: four outputs for "aba"
simple = compile_regex(f"{upper} -> x")
print("->  ", sorted(down(simple, "aba")))

# the four directed operators: scan direction x match length
for op in ["@->", "@>", "->@", ">@"]:
    net = compile_regex(f"{upper} {op} x")
    print(f"{op:<4}", sorted(down(net, "aba")), f"({net.num_states} states)")

# the oracle shows the factorization behind the left-to-right longest result
print(match_spans(compile_regex(upper), "aba"))

# a rule has to look ahead: whether the a's are replaced depends on a later b
lookahead = compile_regex("a+ b @-> x")
for w in ["aaab", "aaa", "aaabaa"]:
    print(w, "->", down(lookahead, w).pop())
