//! The conference-listing document used throughout the docs and tests, with two
//! of its possible worlds.

use crate::model::{ratio, Event, EventTable, Literal, PDocument, PNode, XDocument, XNode};

/// Two conferences kept independently (4/5 and 7/10), locations guarded by the
/// same event `e` (9/10), and a 9/10 vs 1/10 choice between two locations.
pub fn conferences() -> PDocument {
    let e = || vec![Literal::pos("e")];
    let bda = PNode::regular(
        "conference",
        vec![
            PNode::regular("name", vec![PNode::leaf("BDA")]),
            PNode::cie(vec![(
                e(),
                PNode::regular(
                    "location",
                    vec![
                        PNode::regular("city", vec![PNode::leaf("Grenoble-Autrans")]),
                        PNode::regular("country", vec![PNode::leaf("FR")]),
                    ],
                ),
            )]),
        ],
    );
    let place = |city: &str, country: &str| {
        PNode::det(vec![
            PNode::regular("city", vec![PNode::leaf(city)]),
            PNode::regular("country", vec![PNode::leaf(country)]),
        ])
    };
    let amw = PNode::regular(
        "conference",
        vec![
            PNode::regular("name", vec![PNode::leaf("AMW")]),
            PNode::cie(vec![(
                e(),
                PNode::regular(
                    "location",
                    vec![PNode::mux(vec![
                        (ratio(9, 10), place("Cartagena de Indias", "CO")),
                        (ratio(1, 10), place("Cartagena", "ES")),
                    ])],
                ),
            )]),
        ],
    );
    let root = PNode::regular("conferences", vec![PNode::ind(vec![(ratio(4, 5), bda), (ratio(7, 10), amw)])]);
    PDocument::new(root, EventTable::new().with("e", Event::Bool(ratio(9, 10))), true)
}

/// Both conferences with their locations, AMW in Cartagena de Indias, CO.
pub fn conferences_full_world() -> XDocument {
    let conf = |name: &str, city: &str, country: &str| {
        XNode::new(
            "conference",
            vec![
                XNode::new("name", vec![XNode::leaf(name)]),
                XNode::new(
                    "location",
                    vec![XNode::new("city", vec![XNode::leaf(city)]), XNode::new("country", vec![XNode::leaf(country)])],
                ),
            ],
        )
    };
    XDocument::new(
        XNode::new(
            "conferences",
            vec![conf("BDA", "Grenoble-Autrans", "FR"), conf("AMW", "Cartagena de Indias", "CO")],
        ),
        true,
    )
}

/// The world where neither conference is kept.
pub fn conferences_root_world() -> XDocument {
    XDocument::new(XNode::leaf("conferences"), true)
}
