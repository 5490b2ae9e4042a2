"""Argumentation graph construction and DOT rendering."""

import jinja2
import networkx as nx

from moralplan.retrospection._select import MehrResult

_EDGE_STYLES = ("solid", "dashed", "dotted", "bold")
_EDGE_COLORS = ("black", "firebrick", "royalblue", "darkgreen", "darkorange", "purple")

_DOT_TEMPLATE = """\
digraph mehr {
  rankdir=LR;
  node [shape=box, fontname="Helvetica"];
{% for node in nodes %}  {{ node.id }} [label="{{ node.label }}"];
{% endfor %}{% for edge in edges %}  {{ edge.source }} -> {{ edge.target }} [label="{{ edge.theory }}", style={{ edge.style }}, color={{ edge.color }}];
{% endfor %}}
"""


def _quote(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def build_argument_graph(result: MehrResult) -> nx.MultiDiGraph:
    """Arguments as nodes and attacks as edges keyed by theory name."""
    graph = nx.MultiDiGraph()
    model = result.model
    for i, arg in enumerate(result.arguments):
        history = result.histories[arg.policy][arg.history]
        graph.add_node(
            i,
            policy=arg.policy,
            history=arg.history,
            probability=history.probability,
            path=" ".join(model.states[s] for s in history.states),
        )
    for attack in result.attacks:
        graph.add_edge(attack.attacker, attack.target, key=model.theories[attack.theory].name, theory=attack.theory)
    return graph


def emit_argumentation_dot(result: MehrResult) -> str:
    """Render the argumentation graph as a Graphviz digraph.

    Nodes are labelled with policy, history and probability; each theory gets
    its own edge style. Output is deterministic for a given result.
    """
    graph = build_argument_graph(result)
    styles = {
        m: (_EDGE_STYLES[m % len(_EDGE_STYLES)], _EDGE_COLORS[m % len(_EDGE_COLORS)])
        for m in range(len(result.model.theories))
    }
    nodes = [
        {
            "id": f"a{i}",
            "label": f"policy {data['policy']} / history {data['history']}\\np={data['probability']:.6g}",
        }
        for i, data in sorted(graph.nodes(data=True), key=lambda n: n[0])
    ]
    edges = [
        {
            "source": f"a{u}",
            "target": f"a{v}",
            "theory": _quote(str(key)),
            "style": styles[data["theory"]][0],
            "color": styles[data["theory"]][1],
        }
        for u, v, key, data in sorted(graph.edges(keys=True, data=True), key=lambda e: (e[3]["theory"], e[0], e[1]))
    ]
    env = jinja2.Environment(  # nosec B701
        autoescape=False,  # noqa: S701
        loader=jinja2.BaseLoader(),
        keep_trailing_newline=True,
    )
    return env.from_string(_DOT_TEMPLATE).render(nodes=nodes, edges=edges)
