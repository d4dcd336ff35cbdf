"""
Tokenizing and filtering text
=============================

A three-stage tokenizer built by composition, and two filters over
SGML-tagged text.  Multicharacter symbols such as END_OF_TOKEN and <A> are
matched greedily when raw text is read.
"""

import io

from fsc.apply import tokenize_input, transduce_stream
from fsc.selftest import load_recipe

tokenizer = load_recipe("tokenizer")
print(tokenizer)

text = "we are at  least here\nde plus on y va\non y va de plus en plus\n"
out = io.StringIO()
stats = transduce_stream(tokenizer, io.StringIO(text), out, render={"END_OF_TOKEN": " | "})
print(out.getvalue())
print(stats)

line = "<B>one</B><A>two</A><C>three</C><A>four</A>"
positive = load_recipe("filter_pos")
print(tokenize_input(positive, line).pieces)

for name in ["filter_pos", "filter_neg"]:
    out = io.StringIO()
    transduce_stream(load_recipe(name), io.StringIO(line), out)
    print(name, out.getvalue())
