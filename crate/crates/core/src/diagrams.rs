//! Composite Young diagrams and strip removal pictures.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{KacError, Result};
use crate::nqc::NqcTable;
use crate::operators::lower_theta;
use crate::theta::{self, Theta};
use crate::weights::{PartitionWeight, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Covariant,
    Contravariant,
}

/// A pair of partitions drawn from a dominant weight after adding `shift`
/// to every entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CompositeDiagram {
    pub covariant: Vec<usize>,
    pub contravariant: Vec<usize>,
    pub shift: i64,
}

/// Unshifted parts: `λ¹` and `-λ²` reversed.
fn raw_parts(w: &Weight) -> (Vec<i64>, Vec<i64>) {
    let p = w.to_partition();
    (p.even, p.odd.iter().rev().map(|x| -x).collect())
}

impl CompositeDiagram {
    /// The diagram at a given shift, or `None` when a part would be negative.
    pub fn at_shift(w: &Weight, shift: i64) -> Option<Self> {
        let (cov, con) = raw_parts(w);
        let conv = |v: Vec<i64>| v.into_iter().map(|x| usize::try_from(x + shift).ok()).collect::<Option<Vec<_>>>();
        Some(Self { covariant: conv(cov)?, contravariant: conv(con)?, shift })
    }

    /// Partition notation of the underlying weight.
    pub fn partition_weight(&self) -> PartitionWeight {
        let c = self.shift;
        PartitionWeight {
            even: self.covariant.iter().map(|&x| x as i64 - c).collect(),
            odd: self.contravariant.iter().rev().map(|&x| c - x as i64).collect(),
        }
    }

    pub fn part(&self, part: Part) -> &[usize] {
        match part {
            Part::Covariant => &self.covariant,
            Part::Contravariant => &self.contravariant,
        }
    }

    pub fn size(&self, part: Part) -> usize {
        self.part(part).iter().sum()
    }
}

/// Least non-negative shift giving every part at least `margin` cells.
pub fn build_diagram(w: &Weight, margin: usize) -> Result<CompositeDiagram> {
    if !w.is_dominant() {
        return Err(KacError::NotDominant);
    }
    let (cov, con) = raw_parts(w);
    let low = cov.iter().chain(&con).copied().min().unwrap_or(0);
    let shift = (margin as i64 - low).max(0);
    Ok(CompositeDiagram::at_shift(w, shift).expect("shift makes parts non-negative"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledCell {
    pub part: Part,
    pub row: usize,
    pub column: usize,
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelCount {
    pub label: usize,
    pub covariant: usize,
    pub contravariant: usize,
}

/// Cells removed from the diagram of `λ` while lowering by `θ`, each
/// tagged with the stage that removed it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripLabeling {
    pub theta: Theta,
    /// Shift of the frame in which rows and columns are counted.
    pub shift: i64,
    pub cells: Vec<LabeledCell>,
    pub counts: Vec<LabelCount>,
    /// Diagram left after the last stage.
    pub remaining: CompositeDiagram,
}

impl StripLabeling {
    pub fn count(&self, part: Part) -> usize {
        self.cells.iter().filter(|c| c.part == part).count()
    }
}

/// Checks that `outer / inner` is a non-empty connected rim strip and
/// returns its size.
pub fn check_rim_strip(outer: &[usize], inner: &[usize]) -> Result<usize> {
    let fail = |m: String| Err(KacError::StripInvariantViolation(m));
    if outer.len() != inner.len() || outer.iter().zip(inner).any(|(o, i)| i > o) {
        return fail(format!("{inner:?} is not contained in {outer:?}"));
    }
    if inner.windows(2).any(|w| w[0] < w[1]) {
        return fail(format!("{inner:?} is not a partition"));
    }
    let cells: BTreeSet<(usize, usize)> =
        outer.iter().zip(inner).zip(1..).flat_map(|((&o, &i), row)| (i + 1..=o).map(move |col| (row, col))).collect();
    let Some(&start) = cells.iter().next() else {
        return fail("empty strip".into());
    };
    let in_outer = |(r, c): (usize, usize)| r >= 1 && r <= outer.len() && c >= 1 && c <= outer[r - 1];
    for &(r, c) in &cells {
        if in_outer((r + 1, c + 1)) {
            return fail(format!("cell ({r},{c}) is not on the rim"));
        }
    }
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((r, c)) = queue.pop_front() {
        let nbrs = [(r + 1, c), (r, c + 1), (r.wrapping_sub(1), c), (r, c.wrapping_sub(1))];
        for nb in nbrs {
            if cells.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    if seen.len() != cells.len() {
        return fail(format!("strip {cells:?} is disconnected"));
    }
    Ok(cells.len())
}

/// Labels the cells removed at each stage of `L'_θ(λ)` and validates every
/// stage as a rim strip in both parts.
pub fn strip_labeling(lambda: &Weight, theta: &Theta) -> Result<StripLabeling> {
    let table = NqcTable::new(lambda)?;
    if !theta::is_member(&table, theta) {
        return Err(KacError::ThetaNotInThetaLambda(theta.to_string()));
    }
    let trace = lower_theta(lambda, theta)?;
    let (cov, con) = raw_parts(&trace.result);
    let shift = (-cov.iter().chain(&con).copied().min().unwrap_or(0)).max(0);
    let frame = |w: &Weight| -> Result<CompositeDiagram> {
        CompositeDiagram::at_shift(&w.dominant_conjugate()?, shift)
            .ok_or_else(|| KacError::StripInvariantViolation(format!("{w} is not standard at shift {shift}")))
    };

    let mut prev = frame(lambda)?;
    let mut cells = Vec::new();
    let mut counts = Vec::new();
    for (s, stage) in trace.intermediates.iter().enumerate().skip(1) {
        if theta.get(s) == 0 {
            continue;
        }
        let next = frame(stage)?;
        let mut sizes = [0usize; 2];
        for (slot, part) in [Part::Covariant, Part::Contravariant].into_iter().enumerate() {
            let (outer, inner) = (prev.part(part), next.part(part));
            sizes[slot] = check_rim_strip(outer, inner)?;
            if sizes[slot] as i64 != trace.kk[s - 1] {
                return Err(KacError::StripInvariantViolation(format!(
                    "stage {s} removes {} cells but the entries drop by {}",
                    sizes[slot],
                    trace.kk[s - 1]
                )));
            }
            for (row, (&o, &i)) in (1..).zip(outer.iter().zip(inner)) {
                cells.extend((i + 1..=o).map(|column| LabeledCell { part, row, column, label: s }));
            }
        }
        counts.push(LabelCount { label: s, covariant: sizes[0], contravariant: sizes[1] });
        prev = next;
    }
    let expected = CompositeDiagram::at_shift(&trace.result, shift).expect("frame chosen for the result");
    if prev != expected {
        return Err(KacError::StripInvariantViolation("remaining diagram differs from the lowered weight".into()));
    }
    cells.sort_by_key(|c| (c.part, c.row, c.column));
    Ok(StripLabeling { theta: theta.clone(), shift, cells, counts, remaining: prev })
}

/// Monospace picture. The contravariant part sits above and to the left,
/// reflected so that its rows become columns read right to left; the
/// covariant part hangs below it. Labeled cells show their stage.
pub fn render_ascii(diagram: &CompositeDiagram, labeling: Option<&StripLabeling>) -> String {
    let delta = labeling.map_or(0, |l| diagram.shift - l.shift);
    let labels: BTreeMap<(Part, usize, i64), usize> = labeling
        .map(|l| l.cells.iter().map(|c| ((c.part, c.row, c.column as i64 + delta), c.label)).collect())
        .unwrap_or_default();
    let width = labels.values().max().map_or(1, |m| m.to_string().len());
    let cell = |part: Part, row: usize, col: usize| match labels.get(&(part, row, col as i64)) {
        Some(l) => format!("[{l:>width$}]"),
        None => format!("[{:width$}]", ""),
    };
    let blank = " ".repeat(width + 2);

    let con = &diagram.contravariant;
    let n = con.len();
    let height = con.iter().copied().max().unwrap_or(0);
    let mut out = String::new();
    for b in (1..=height).rev() {
        let line: String = (1..=n)
            .rev()
            .map(|a| if con[a - 1] >= b { cell(Part::Contravariant, a, b) } else { blank.clone() })
            .collect();
        let _ = writeln!(out, "{}", line.trim_end());
    }
    for (i, &len) in diagram.covariant.iter().enumerate() {
        let line: String = blank.repeat(n) + &(1..=len).map(|j| cell(Part::Covariant, i + 1, j)).collect::<String>();
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}
