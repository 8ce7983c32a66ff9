"""Lark grammars for the graph DSL and for Leavitt path algebra expressions"""

# A graph document is a list of vertex and edge declarations:
#
#   # the two-vertex cycle
#   vertex v;
#   vertex w;
#   edge e: v -> w;
#   edge f: w -> v;
GRAPH_GRAMMAR = r"""
    start: stmt*

    ?stmt: vertex_stmt
         | edge_stmt

    vertex_stmt: "vertex" ID ";"
    edge_stmt: "edge" ID ":" ID "->" ID ";"

    ID: /[A-Za-z_][A-Za-z0-9_]*/
    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

# Terms are juxtaposed factors with an optional rational coefficient;
# a trailing * marks a ghost edge: "2 e f* - 1/2 v + e* e"
ELEMENT_GRAMMAR = r"""
    start: first_term (SIGN term)*

    first_term: SIGN? term

    term: coeff factor*
        | factor+

    coeff: INT ("/" INT)?
    factor: ID GHOST?

    SIGN: "+" | "-"
    GHOST: "*"
    ID: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.INT
    %import common.WS
    %ignore WS
"""
