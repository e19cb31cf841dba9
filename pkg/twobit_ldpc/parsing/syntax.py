"""
Syntax reference for the hand-authored text formats

Contains short annotated examples of rule text, cascade specs and base
matrices, shown by ``twobit-ldpc info --formats``.
"""

from typing import Any, Dict


FORMAT_EXAMPLES = {
    "memoryless_rule": {
        "description": "Rule without check memory: one count (unsatisfied checks)",
        "text": (
            "rule flip-on-three gamma=3 memory=0 symmetric=1\n"
            "0s 0 -> 0s\n0s 1 -> 0s\n0s 2 -> 0s\n0s 3 -> 1s\n"
            "0w 0 -> 0w\n0w 1 -> 0w\n0w 2 -> 0w\n0w 3 -> 1s\n"
            "1w 0 -> 1w\n1w 1 -> 1w\n1w 2 -> 1w\n1w 3 -> 0s\n"
            "1s 0 -> 1s\n1s 1 -> 1s\n1s 2 -> 1s\n1s 3 -> 0s\n"
        ),
    },

    "memory_rule_line": {
        "description": "Rule with check memory: counts are n_up n_un n_sp (n_sn is implied)",
        "text": "rule my-rule gamma=3 memory=1\n0s 0 1 2 -> 0s\n# ... one line per (state, counts)\n",
    },

    "cascade": {
        "description": "Cascade members in order with their iteration limits",
        "text": "f1 30\nf2 30\nrules/variant-3.rule 20\n",
    },

    "base_matrix": {
        "description": "QC base matrix: header 'rows cols p', -1 for an empty circulant",
        "text": "3 4 13\n0 0 0 0\n0 1 3 9\n0 5 2 11\n",
    },

    "trace": {
        "description": "Decode trace: iteration | variable states | check states",
        "text": "0 | 1s 0s 1s 0s | up up up up up sp up sp\n1 | 0s 0w 0s 0w | sn sn sn sn sn sp sn sp\n",
    },
}


def get_format_examples() -> Dict[str, Dict[str, Any]]:
    """Get all format examples"""
    return FORMAT_EXAMPLES.copy()


def print_format_examples() -> None:
    """Print every format example"""
    for name, example in FORMAT_EXAMPLES.items():
        print(f"== {name}: {example['description']}")
        print(example['text'])
