//! Valued Motzkin paths: one step per element of `[n]`.
//!
//! A non-singleton opener is an up step (`NE`, label 1), a singleton a starred
//! flat step (`E`, label `1*`), a non-singleton closer a down step (`SE`) and
//! a passant a flat step (`E`), the last two labelled with their `gamma`.
//! The height before step `i` is the number of incomplete blocks `l_i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{rebuild_from_profile, trace_profile, ElementKind, SetPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    NE,
    SE,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    pub label: usize,
    pub starred: bool,
}

impl Step {
    pub fn up() -> Self {
        Step {
            kind: StepKind::NE,
            label: 1,
            starred: false,
        }
    }

    pub fn down(label: usize) -> Self {
        Step {
            kind: StepKind::SE,
            label,
            starred: false,
        }
    }

    pub fn flat(label: usize) -> Self {
        Step {
            kind: StepKind::E,
            label,
            starred: false,
        }
    }

    pub fn star() -> Self {
        Step {
            kind: StepKind::E,
            label: 1,
            starred: true,
        }
    }

    fn label_text(&self) -> String {
        if self.starred {
            format!("{}*", self.label)
        } else {
            self.label.to_string()
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            StepKind::NE => "NE",
            StepKind::SE => "SE",
            StepKind::E => "E",
        };
        write!(f, "{kind}({})", self.label_text())
    }
}

/// A Motzkin path whose steps carry labels bounded by the height.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPath")]
pub struct LabeledMotzkinPath {
    steps: Vec<Step>,
}

#[derive(Deserialize)]
struct RawPath {
    steps: Vec<Step>,
}

impl TryFrom<RawPath> for LabeledMotzkinPath {
    type Error = Error;

    fn try_from(raw: RawPath) -> Result<Self> {
        LabeledMotzkinPath::new(raw.steps)
    }
}

/// Checks the path invariants, reporting the first bad step (1-based).
pub fn validate(steps: &[Step]) -> Result<()> {
    let mut height = 0usize;
    for (idx, step) in steps.iter().enumerate() {
        let bad = |reason: String| Error::InvalidPath {
            step: idx + 1,
            reason,
        };
        if step.starred && step.kind != StepKind::E {
            return Err(bad("only flat steps can be starred".into()));
        }
        match step.kind {
            StepKind::NE => {
                if step.label != 1 {
                    return Err(bad(format!("up step labelled {}", step.label)));
                }
                height += 1;
            }
            StepKind::E if step.starred => {
                if step.label != 1 {
                    return Err(bad(format!("starred step labelled {}", step.label)));
                }
            }
            StepKind::E | StepKind::SE => {
                if height == 0 {
                    let what = if step.kind == StepKind::SE {
                        "down step at height 0"
                    } else {
                        "unstarred flat step at height 0"
                    };
                    return Err(bad(what.into()));
                }
                if step.label == 0 || step.label > height {
                    return Err(bad(format!(
                        "label {} outside 1..={height}",
                        step.label
                    )));
                }
                if step.kind == StepKind::SE {
                    height -= 1;
                }
            }
        }
    }
    if height != 0 {
        return Err(Error::InvalidPath {
            step: steps.len(),
            reason: format!("path ends at height {height}"),
        });
    }
    Ok(())
}

impl LabeledMotzkinPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        validate(&steps)?;
        Ok(LabeledMotzkinPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Height before each step.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = 0;
        self.steps
            .iter()
            .map(|s| {
                let before = h;
                match s.kind {
                    StepKind::NE => h += 1,
                    StepKind::SE => h -= 1,
                    StepKind::E => {}
                }
                before
            })
            .collect()
    }

    /// Number of blocks of the encoded partition: up steps plus starred steps.
    pub fn openings(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::NE || s.starred)
            .count()
    }

    /// Multi-line drawing: one column per step, labels on the last line.
    pub fn render_ascii(&self) -> String {
        let width = self
            .steps
            .iter()
            .map(|s| s.label_text().len())
            .max()
            .unwrap_or(1)
            + 1;
        let heights = self.heights();
        let top = self
            .steps
            .iter()
            .zip(&heights)
            .map(|(s, &h)| if s.kind == StepKind::SE { h - 1 } else { h })
            .max()
            .unwrap_or(0);
        let mut lines = Vec::new();
        for level in (0..=top).rev() {
            let mut line = String::new();
            for (step, &h) in self.steps.iter().zip(&heights) {
                let glyph = match step.kind {
                    StepKind::NE if h == level => '/',
                    StepKind::SE if h == level + 1 => '\\',
                    StepKind::E if h == level => {
                        if step.starred {
                            '*'
                        } else {
                            '_'
                        }
                    }
                    _ => ' ',
                };
                line.push(glyph);
                line.extend(std::iter::repeat_n(' ', width - 1));
            }
            lines.push(line.trim_end().to_string());
        }
        let mut labels = String::new();
        for step in &self.steps {
            let text = step.label_text();
            labels.push_str(&text);
            labels.extend(std::iter::repeat_n(' ', width - text.len()));
        }
        lines.push(labels.trim_end().to_string());
        lines.join("\n")
    }
}

impl fmt::Display for LabeledMotzkinPath {
    /// Space-separated steps such as `NE(1) E(1*) SE(1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, step) in self.steps.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

impl FromStr for LabeledMotzkinPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (idx, token) in s.split_whitespace().enumerate() {
            let bad = || Error::Parse {
                position: idx + 1,
                message: format!("step {} `{token}` is not of the form KIND(label)", idx + 1),
            };
            let (kind, rest) = token.split_once('(').ok_or_else(bad)?;
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let (digits, starred) = match inner.strip_suffix('*') {
                Some(d) => (d, true),
                None => (inner, false),
            };
            let label = digits.parse().map_err(|_| bad())?;
            let kind = match kind {
                "NE" => StepKind::NE,
                "SE" => StepKind::SE,
                "E" => StepKind::E,
                _ => return Err(bad()),
            };
            steps.push(Step {
                kind,
                label,
                starred,
            });
        }
        LabeledMotzkinPath::new(steps)
    }
}

pub fn encode(p: &SetPartition) -> LabeledMotzkinPath {
    let profile = trace_profile(p);
    let steps = profile
        .kinds
        .iter()
        .zip(&profile.gamma)
        .map(|(kind, &g)| match kind {
            ElementKind::Opener => Step::up(),
            ElementKind::Singleton => Step::star(),
            ElementKind::Closer => Step::down(g),
            ElementKind::Passant => Step::flat(g),
        })
        .collect();
    LabeledMotzkinPath { steps }
}

pub fn decode(path: &LabeledMotzkinPath) -> Result<SetPartition> {
    decode_steps(path.steps())
}

/// Decodes raw steps, validating them first.
pub fn decode_steps(steps: &[Step]) -> Result<SetPartition> {
    validate(steps)?;
    let mut height = 0;
    let mut kinds = Vec::with_capacity(steps.len());
    let mut gamma = Vec::with_capacity(steps.len());
    for step in steps {
        let (kind, g) = match step.kind {
            StepKind::NE => (ElementKind::Opener, height + 1),
            StepKind::E if step.starred => (ElementKind::Singleton, height + 1),
            StepKind::E => (ElementKind::Passant, step.label),
            StepKind::SE => (ElementKind::Closer, step.label),
        };
        match step.kind {
            StepKind::NE => height += 1,
            StepKind::SE => height -= 1,
            StepKind::E => {}
        }
        kinds.push(kind);
        gamma.push(g);
    }
    rebuild_from_profile(&kinds, &gamma)
}

/// Mirror image of the path about a vertical axis.
///
/// The step order is reversed and up and down steps swap. Flat steps keep
/// their label at the mirrored position and up steps are labelled 1. Each up
/// step of the input is paired with the first unused down step starting one
/// level higher; the mirror of that up step takes the paired down label.
pub fn reflect(path: &LabeledMotzkinPath) -> Result<LabeledMotzkinPath> {
    let heights = path.heights();
    let mut used = vec![false; path.len()];
    let mut paired = vec![0; path.len()];
    for (a, step) in path.steps.iter().enumerate() {
        if step.kind != StepKind::NE {
            continue;
        }
        let c = (0..path.len())
            .find(|&c| !used[c] && path.steps[c].kind == StepKind::SE && heights[c] == heights[a] + 1)
            .ok_or_else(|| Error::Internal(format!("{path}: no down step pairs with step {}", a + 1)))?;
        used[c] = true;
        paired[a] = path.steps[c].label;
    }
    let steps: Vec<Step> = path
        .steps
        .iter()
        .enumerate()
        .rev()
        .map(|(a, s)| match s.kind {
            StepKind::SE => Step::up(),
            StepKind::NE => Step::down(paired[a]),
            StepKind::E => *s,
        })
        .collect();
    validate(&steps).map_err(|e| Error::Internal(format!("reflection of {path} is invalid: {e}")))?;
    Ok(LabeledMotzkinPath { steps })
}

/// Every valid labelled path of length `n`.
pub fn enumerate_paths(n: usize) -> Vec<LabeledMotzkinPath> {
    fn grow(n: usize, height: usize, steps: &mut Vec<Step>, out: &mut Vec<LabeledMotzkinPath>) {
        let left = n - steps.len();
        if left == 0 {
            if height == 0 {
                out.push(LabeledMotzkinPath {
                    steps: steps.clone(),
                });
            }
            return;
        }
        if height > left {
            return;
        }
        let mut choices = vec![Step::star()];
        if height < left {
            choices.push(Step::up());
        }
        for label in 1..=height {
            choices.push(Step::flat(label));
            choices.push(Step::down(label));
        }
        for step in choices {
            let next = match step.kind {
                StepKind::NE => height + 1,
                StepKind::SE => height - 1,
                StepKind::E => height,
            };
            steps.push(step);
            grow(n, next, steps, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    grow(n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijections::phi;

    fn example_path() -> LabeledMotzkinPath {
        encode(&"1,4,8/2/3,7,9/5,6".parse().unwrap())
    }

    #[test]
    fn encode_example() {
        assert_eq!(
            example_path().to_string(),
            "NE(1) E(1*) NE(1) E(1) NE(1) SE(3) E(2) SE(1) SE(1)"
        );
        let singles: SetPartition = "1/2/3".parse().unwrap();
        assert_eq!(encode(&singles).to_string(), "E(1*) E(1*) E(1*)");
        let pair: SetPartition = "1,2".parse().unwrap();
        assert_eq!(encode(&pair).to_string(), "NE(1) SE(1)");
    }

    #[test]
    fn reflect_example() {
        let image = reflect(&example_path()).unwrap();
        assert_eq!(
            image.to_string(),
            "NE(1) NE(1) E(2) NE(1) SE(3) E(1) SE(1) E(1*) SE(1)"
        );
        assert_eq!(decode(&image).unwrap().to_string(), "1,6,7/2,3,9/4,5/8");
        let flat: LabeledMotzkinPath = "E(1*) E(1*)".parse().unwrap();
        assert_eq!(reflect(&flat).unwrap(), flat);
    }

    #[test]
    fn decode_edge_cases() {
        let empty = LabeledMotzkinPath::new(vec![]).unwrap();
        assert_eq!(decode(&empty).unwrap(), SetPartition::empty());
        let p: SetPartition = "1,4,8/2/3,7,9/5,6".parse().unwrap();
        assert_eq!(decode(&encode(&p)).unwrap(), p);
    }

    #[test]
    fn invalid_paths_name_the_step() {
        let cases = [
            (vec![Step::down(1)], 1),
            (vec![Step::up(), Step::flat(2), Step::down(1)], 2),
            (vec![Step::up(), Step::up(), Step::down(1)], 3),
            (vec![Step::flat(1)], 1),
            (
                vec![Step {
                    kind: StepKind::NE,
                    label: 1,
                    starred: true,
                }],
                1,
            ),
            (vec![Step::up(), Step::down(0)], 2),
        ];
        for (steps, bad) in cases {
            match decode_steps(&steps) {
                Err(Error::InvalidPath { step, .. }) => assert_eq!(step, bad, "{steps:?}"),
                other => panic!("expected invalid path, got {other:?}"),
            }
        }
    }

    #[test]
    fn text_and_json_formats() {
        let path = example_path();
        assert_eq!(path.to_string().parse::<LabeledMotzkinPath>().unwrap(), path);
        let json = serde_json::to_string(&encode(&"1,2".parse().unwrap())).unwrap();
        assert_eq!(
            json,
            r#"{"steps":[{"kind":"NE","label":1,"starred":false},{"kind":"SE","label":1,"starred":false}]}"#
        );
        let back: LabeledMotzkinPath = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_string(), "NE(1) SE(1)");
        let bad = r#"{"steps":[{"kind":"SE","label":1,"starred":false}]}"#;
        assert!(serde_json::from_str::<LabeledMotzkinPath>(bad).is_err());
        assert!("NE(1) XX(1)".parse::<LabeledMotzkinPath>().is_err());
    }

    #[test]
    fn ascii_rendering() {
        let pair = encode(&"1,2".parse().unwrap());
        assert_eq!(pair.render_ascii(), "/ \\\n1 1");
        let drawing = example_path().render_ascii();
        assert_eq!(drawing.lines().count(), 4);
        assert!(drawing.ends_with("1  1* 1  1  1  3  2  1  1"));
    }

    #[test]
    fn path_counts_are_bell_numbers() {
        let counts: Vec<usize> = (0..=7).map(|n| enumerate_paths(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn reflection_agrees_with_phi_small() {
        for n in 0..=6 {
            for p in crate::enumerate::enumerate_all(n) {
                let via_path = decode(&reflect(&encode(&p)).unwrap()).unwrap();
                assert_eq!(via_path, phi(&p).unwrap(), "{p}");
            }
        }
    }
}
