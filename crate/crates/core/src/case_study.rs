//! The Supply Chain 4.0 challenge-ranking case study: the hierarchy of ten
//! implementation challenges in three categories, the aggregated fuzzy
//! comparison matrices, and the published results used as comparison targets.

use indexmap::IndexMap;

use crate::fuzzy::Tfn;
use crate::hierarchy::{ComparisonJudgment, ComparisonMatrix, Hierarchy, Node};

pub const ROOT_ID: &str = "W0";

/// `(category id, label, [(leaf id, label)])`.
pub type Category = (
    &'static str,
    &'static str,
    &'static [(&'static str, &'static str)],
);
/// `(parent id, [(row, col, l, m, u)])`.
pub type Block = (
    &'static str,
    &'static [(&'static str, &'static str, f64, f64, f64)],
);

/// Categories and their challenges in published order.
pub const CHALLENGES: [Category; 3] = [
    (
        "W1",
        "Technical challenges",
        &[
            ("W11", "System complexity"),
            ("W12", "Analytical challenges and high computational load"),
            ("W13", "Security and privacy"),
            ("W14", "Connectivity challenges"),
        ],
    ),
    (
        "W2",
        "Environmental, financial and cultural challenges",
        &[
            ("W21", "Environmental risks"),
            ("W22", "Energy management"),
            ("W23", "Investment cost"),
            ("W24", "Lack of trust"),
        ],
    ),
    (
        "W3",
        "Technological challenges",
        &[
            ("W31", "Lack of knowledge and skills"),
            ("W32", "Lack of adequate infrastructure"),
        ],
    ),
];

/// Lower-triangular judgments `(row, col, l, m, u)` meaning `w_row / w_col`.
pub const JUDGMENTS: [Block; 4] = [
    (
        ROOT_ID,
        &[
            ("W2", "W1", 2.1, 2.7, 3.8),
            ("W3", "W1", 1.5, 1.75, 2.5),
            ("W3", "W2", 3.1, 3.95, 5.12),
        ],
    ),
    (
        "W1",
        &[
            ("W12", "W11", 3.1, 4.2, 5.1),
            ("W13", "W11", 2.1, 2.8, 4.7),
            ("W13", "W12", 2.3, 3.1, 4.2),
            ("W14", "W11", 3.1, 3.5, 5.4),
            ("W14", "W12", 3.1, 3.5, 4.5),
            ("W14", "W13", 2.1, 2.45, 3.21),
        ],
    ),
    (
        "W2",
        &[
            ("W22", "W21", 2.5, 3.5, 4.2),
            ("W23", "W21", 2.8, 3.1, 3.9),
            ("W23", "W22", 2.25, 3.4, 4.9),
            ("W24", "W21", 3.1, 3.25, 3.9),
            ("W24", "W22", 2.35, 3.41, 4.25),
            ("W24", "W23", 1.25, 2.47, 4.31),
        ],
    ),
    ("W3", &[("W32", "W31", 2.5, 3.47, 4.25)]),
];

/// Published local weights per block, in item order.
pub const REPORTED_WEIGHTS: [(&str, &[(&str, f64)]); 4] = [
    (
        ROOT_ID,
        &[("W1", 0.373887), ("W2", 0.281210), ("W3", 0.347111)],
    ),
    (
        "W1",
        &[
            ("W11", 0.258811),
            ("W12", 0.165998),
            ("W13", 0.387849),
            ("W14", 0.194306),
        ],
    ),
    (
        "W2",
        &[
            ("W21", 0.271194),
            ("W22", 0.209380),
            ("W23", 0.268777),
            ("W24", 0.256814),
        ],
    ),
    ("W3", &[("W31", 0.363775), ("W32", 0.636225)]),
];

/// Published consistency index per block.
pub const REPORTED_LAMBDA: [(&str, f64); 4] = [
    (ROOT_ID, 0.4374),
    ("W1", 0.3214),
    ("W2", 0.2541),
    ("W3", 0.4251),
];

/// Published global weight and overall rank per leaf.
pub const REPORTED_GLOBAL: [(&str, f64, usize); 10] = [
    ("W11", 0.096766, 4),
    ("W12", 0.062065, 9),
    ("W13", 0.145012, 2),
    ("W14", 0.072648, 7),
    ("W21", 0.076263, 5),
    ("W22", 0.05888, 10),
    ("W23", 0.075583, 6),
    ("W24", 0.072219, 8),
    ("W31", 0.12627, 3),
    ("W32", 0.220841, 1),
];

pub fn root_node() -> Node {
    let categories = CHALLENGES
        .iter()
        .map(|(id, label, leaves)| {
            Node::branch(
                *id,
                *label,
                leaves
                    .iter()
                    .map(|(lid, ll)| Node::leaf(*lid, *ll))
                    .collect(),
            )
        })
        .collect();
    Node::branch(
        ROOT_ID,
        "Supply Chain 4.0 implementation challenges",
        categories,
    )
}

/// The bundled case-study hierarchy with its four comparison matrices.
pub fn paper_study() -> Hierarchy {
    let root = root_node();
    let mut matrices = IndexMap::new();
    for (parent, rows) in JUDGMENTS {
        let node = root.find(parent).expect("known parent");
        let items = node.children.iter().map(|c| c.id.clone()).collect();
        let judgments = rows
            .iter()
            .map(|&(r, c, l, m, u)| {
                ComparisonJudgment::new(r, c, Tfn::new(l, m, u).expect("valid dataset"))
            })
            .collect();
        let matrix = ComparisonMatrix::new(parent, items, judgments).expect("valid dataset");
        matrices.insert(parent.to_string(), matrix);
    }
    Hierarchy::new(root, matrices).expect("valid dataset")
}

pub fn reported_weights() -> IndexMap<String, IndexMap<String, f64>> {
    REPORTED_WEIGHTS
        .iter()
        .map(|(p, ws)| {
            (
                p.to_string(),
                ws.iter().map(|(id, w)| (id.to_string(), *w)).collect(),
            )
        })
        .collect()
}
