use bufsim_web::{hierarchy, include, sweep};

const STALL_LEFT: &str = include_str!("data/stall_left.ba");
const STALL_RIGHT: &str = include_str!("data/stall_right.ba");
const REL_LEFT: &str = include_str!("data/rel_left.bt");
const REL_RIGHT: &str = include_str!("data/rel_right.bt");

fn split(text: &str) -> (&str, &str) {
    text.split_once("\n\n").expect("blank line between automata")
}

fn grid(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split('\t').skip(1).map(String::from).collect())
        .collect()
}

#[test]
fn hierarchy_grid_has_threshold_at_k1_plus_one() {
    for k1 in 0..=2 {
        let text = hierarchy(k1);
        let (l, r) = split(&text);
        let g = grid(&sweep(l, r, 3).unwrap());
        assert_eq!(g.len(), 4);
        for (i, row) in g.iter().enumerate() {
            for cell in row {
                assert_eq!(cell, if i > k1 { "D" } else { "S" }, "k1={k1} row {i}");
            }
        }
    }
}

#[test]
fn stalling_pair_is_all_spoiler() {
    let g = grid(&sweep(STALL_LEFT, STALL_RIGHT, 2).unwrap());
    assert!(g.iter().flatten().all(|c| c == "S"));
}

#[test]
fn sweep_reports_parse_errors() {
    let e = sweep("nonsense", STALL_RIGHT, 1).unwrap_err();
    assert!(e.starts_with("left:"), "{e}");
    let text = hierarchy(0);
    let (l, _) = split(&text);
    let e = sweep(l, STALL_RIGHT, 1).unwrap_err();
    assert!(e.contains("alphabet"), "{e}");
}

#[test]
fn include_verdicts() {
    assert_eq!(include(REL_LEFT, REL_LEFT, 0, 0).unwrap(), "INCLUDED");
    assert_eq!(include(REL_LEFT, REL_RIGHT, 2, 2).unwrap(), "UNKNOWN");
    assert!(include(REL_LEFT, "bt x\n", 0, 0).unwrap_err().starts_with("right:"));
}

#[test]
fn page_examples_parse() {
    let page = include_str!("../www/index.html");
    let grab = |id: &str| {
        let start = page.find(&format!("<textarea id=\"{id}\">")).unwrap();
        let body = &page[start..];
        let body = &body[body.find('>').unwrap() + 1..];
        body[..body.find("</textarea>").unwrap()].to_string()
    };
    let v = include(&grab("tl"), &grab("tr"), 1, 1).unwrap();
    assert!(v == "INCLUDED" || v == "UNKNOWN");
}
