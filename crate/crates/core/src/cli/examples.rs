//! Built-in scenarios.

use serde_json::json;

use crate::error::{Error, Result};

use super::scenario::Scenario;

pub const EXAMPLES: [&str; 5] = [
    "circle",
    "surface-3-3",
    "space-curve-2-2",
    "elliptic-blowup",
    "a2-origin",
];

fn fractions(items: &[(&str, &str)]) -> serde_json::Value {
    items
        .iter()
        .map(|(n, d)| json!({ "num": n, "den": d }))
        .collect()
}

/// The scenario registered under `name`.
pub fn builtin_example(name: &str) -> Result<Scenario> {
    let value = match name {
        "circle" => json!({
            "ring": ["x", "y", "z"],
            "command": "verify-map",
            "payload": {
                "source": {
                    "ring": ["x", "y", "z"],
                    "inequalities": ["y+1"],
                    "relations": ["x^2+y^2-1", "z"],
                    "sample": ["1", "0", "0"]
                },
                "target": {
                    "ring": ["u", "v", "w"],
                    "inequalities": ["u^2-v+1"],
                    "relations": ["v", "w"]
                },
                "forward": fractions(&[("x", "y+1"), ("x^2+y^2-1", "y+1"), ("z", "1")]),
                "backward": fractions(&[
                    ("2*u", "u^2-v+1"),
                    ("-u^2+v+1", "u^2-v+1"),
                    ("w", "1"),
                ]),
            }
        }),
        "surface-3-3" => json!({
            "ring": ["x", "y", "z"],
            "command": "verify-map",
            "payload": {
                "source": {
                    "ring": ["x", "y", "z"],
                    "inequalities": ["1-x*y"],
                    "relations": ["x-(x^2+z^2)*y"]
                },
                "target": {
                    "ring": ["u", "v"],
                    "inequalities": ["u^2*v^2+1"]
                },
                "forward": fractions(&[("z", "1-x*y"), ("y", "1")]),
                "backward": fractions(&[
                    ("u^2*v", "u^2*v^2+1"),
                    ("v", "1"),
                    ("u", "u^2*v^2+1"),
                ]),
            }
        }),
        "space-curve-2-2" => json!({
            "ring": ["x", "y", "z"],
            "command": "member",
            "payload": {
                "polynomial": "z^2-y*(x^3-x-1)",
                "ideal": ["y^2-x^3+x", "z^2-y^3+y"]
            }
        }),
        "elliptic-blowup" => json!({
            "ring": ["x", "y", "z"],
            "command": "blowup",
            "payload": {
                "f": "x-x^3+y^2",
                "subvariety": ["z"],
                "point": ["0", "0", "0"],
                "shift": "x"
            }
        }),
        "a2-origin" => json!({
            "ring": ["x", "y"],
            "command": "rees",
            "payload": { "generators": ["x", "y"] }
        }),
        _ => {
            return Err(Error::UnknownExample {
                name: name.to_string(),
                available: EXAMPLES.iter().map(|s| s.to_string()).collect(),
            })
        }
    };
    Ok(serde_json::from_value(value)?)
}
