//! Named built-in problems, stored as JSON text so they exercise the same
//! parsing path as user files.

pub const FIXTURES: &[(&str, &str)] = &[
    (
        "two-lines",
        r#"{
  "kind": "condition-k",
  "dim": 2,
  "filtrations": {
    "a": {"dim": 2, "steps": [{"level": 1, "basis": [["1", "0"]]}]},
    "b": {"dim": 2, "steps": [{"level": 1, "basis": [["0", "1"]]}]}
  }
}"#,
    ),
    (
        "three-lines",
        r#"{
  "kind": "condition-k",
  "dim": 2,
  "filtrations": {
    "a": {"dim": 2, "steps": [{"level": 1, "basis": [["1", "0"]]}]},
    "b": {"dim": 2, "steps": [{"level": 1, "basis": [["0", "1"]]}]},
    "c": {"dim": 2, "steps": [{"level": 1, "basis": [["1", "1"]]}]}
  }
}"#,
    ),
    (
        "gm-square",
        r#"{"kind": "neutralizable", "generators": [[2]]}"#,
    ),
    (
        "g-mod-u",
        r#"{"kind": "neutralizable", "generators": [[1, 0], [0, 1]]}"#,
    ),
    (
        "pglv-1",
        r#"{"kind": "neutralizable", "generators": [[1]]}"#,
    ),
    (
        "pglv-2",
        r#"{"kind": "neutralizable", "generators": [[1], [1]]}"#,
    ),
    (
        "pglv-3",
        r#"{"kind": "neutralizable", "generators": [[1], [1], [1]]}"#,
    ),
    (
        "pglv-4",
        r#"{"kind": "neutralizable", "generators": [[1], [1], [1], [1]]}"#,
    ),
    (
        "pgl2-normalizer",
        r#"{"kind": "neutralizable", "generators": [[2]]}"#,
    ),
    (
        "pgl2-raising",
        r#"{
  "kind": "condition-c",
  "w_dim": 2,
  "lie": {
    "dim": 1,
    "action": [[["0", "0"], ["1", "0"]]],
    "levels": {"0": {"dim": 1, "steps": [{"level": -1, "basis": [["1"]]}]}}
  },
  "filtrations": {"0": {"dim": 2, "steps": [{"level": 1, "basis": [["1", "0"]]}]}}
}"#,
    ),
    (
        "pgl2-lowering",
        r#"{
  "kind": "condition-c",
  "w_dim": 2,
  "lie": {
    "dim": 1,
    "action": [[["0", "1"], ["0", "0"]]],
    "levels": {"0": {"dim": 1, "steps": [{"level": -1, "basis": [["1"]]}]}}
  },
  "filtrations": {
    "0": {
      "dim": 2,
      "steps": [
        {"level": 0, "basis": [["1", "0"], ["0", "1"]]},
        {"level": 2, "basis": [["0", "1"]]}
      ]
    }
  }
}"#,
    ),
    (
        "rees-dim2",
        r#"{
  "kind": "rees",
  "dim": 2,
  "filtration": {
    "dim": 2,
    "steps": [
      {"level": 0, "basis": [["1", "0"], ["0", "1"]]},
      {"level": 2, "basis": [["1", "1"]]}
    ]
  }
}"#,
    ),
    (
        "hom-shift",
        r#"{
  "kind": "hom",
  "source": {"dim": 1, "steps": [{"level": 0, "basis": [["1"]]}]},
  "target": {"dim": 1, "steps": [{"level": 1, "basis": [["1"]]}]}
}"#,
    ),
    (
        "p1-o3",
        r#"{
  "kind": "sections",
  "dim": 1,
  "fan": {
    "rank": 1,
    "rays": [{"id": "+", "gen": [1]}, {"id": "-", "gen": [-1]}],
    "maximal_cones": [["+"], ["-"]]
  },
  "filtrations": {
    "+": {"dim": 1, "steps": [{"level": 3, "basis": [["1"]]}]},
    "-": {"dim": 1, "steps": [{"level": 0, "basis": [["1"]]}]}
  }
}"#,
    ),
    (
        "p1-neg",
        r#"{
  "kind": "sections",
  "dim": 1,
  "fan": {
    "rank": 1,
    "rays": [{"id": "+", "gen": [1]}, {"id": "-", "gen": [-1]}],
    "maximal_cones": [["+"], ["-"]]
  },
  "filtrations": {
    "+": {"dim": 1, "steps": [{"level": -1, "basis": [["1"]]}]},
    "-": {"dim": 1, "steps": [{"level": 0, "basis": [["1"]]}]}
  }
}"#,
    ),
    (
        "p1xp1-11",
        r#"{
  "kind": "bundle",
  "dim": 1,
  "fan": {
    "rank": 2,
    "rays": [
      {"id": "x+", "gen": [1, 0]},
      {"id": "x-", "gen": [-1, 0]},
      {"id": "y+", "gen": [0, 1]},
      {"id": "y-", "gen": [0, -1]}
    ],
    "maximal_cones": [["x+", "y+"], ["x+", "y-"], ["x-", "y+"], ["x-", "y-"]]
  },
  "filtrations": {
    "x+": {"dim": 1, "steps": [{"level": 1, "basis": [["1"]]}]},
    "x-": {"dim": 1, "steps": [{"level": 0, "basis": [["1"]]}]},
    "y+": {"dim": 1, "steps": [{"level": 1, "basis": [["1"]]}]},
    "y-": {"dim": 1, "steps": [{"level": 0, "basis": [["1"]]}]}
  }
}"#,
    ),
    (
        "p1xp1-rank2",
        r#"{
  "kind": "bundle",
  "dim": 2,
  "fan": {
    "rank": 2,
    "rays": [
      {"id": "x+", "gen": [1, 0]},
      {"id": "x-", "gen": [-1, 0]},
      {"id": "y+", "gen": [0, 1]},
      {"id": "y-", "gen": [0, -1]}
    ],
    "maximal_cones": [["x+", "y+"], ["x+", "y-"], ["x-", "y+"], ["x-", "y-"]]
  },
  "filtrations": {
    "x+": {"dim": 2, "steps": [{"level": 1, "basis": [["1", "0"]]}]},
    "x-": {"dim": 2, "steps": [{"level": 0, "basis": [["1", "0"], ["0", "1"]]}]},
    "y+": {"dim": 2, "steps": [{"level": 1, "basis": [["1", "1"]]}]},
    "y-": {"dim": 2, "steps": [{"level": 0, "basis": [["1", "0"], ["0", "1"]]}]}
  }
}"#,
    ),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}
