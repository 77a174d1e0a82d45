//! The type-A left-right diagram game and the diagram formula for mixed
//! Eulerian numbers.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::petring::Composition;
use crate::{factorial, format_q, Error, Result, Q};

/// Game data derived from a composition `(c_1, …, c_{n−1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSetup {
    /// Grid width `n − 1`.
    pub width: usize,
    /// `M = {1^{c_1}, 2^{c_2}, …}`, weakly increasing.
    pub m: Vec<usize>,
    /// `J = {j : c_j ≥ 1}`, increasing.
    pub j: Vec<usize>,
    /// `I = M ∖ J`, weakly increasing; row `k ≥ 2` marks column `I[k − 2]`.
    pub i: Vec<usize>,
}

impl DiagramSetup {
    /// Number of rows in every diagram.
    pub fn rows(&self) -> usize {
        self.i.len() + 1
    }

    /// Marked column of a row (1-based rows, `None` for row 1).
    pub fn marked(&self, row: usize) -> Option<usize> {
        if row >= 2 {
            self.i.get(row - 2).copied()
        } else {
            None
        }
    }
}

/// How a row's new box was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    Left,
    Right,
    ForcedLeft,
    ForcedRight,
}

impl Choice {
    pub fn is_left(self) -> bool {
        matches!(self, Choice::Left | Choice::ForcedLeft)
    }
}

/// One played row: the marked string `[a, b]` around column `marked`, the added column and its factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowMove {
    pub marked: usize,
    pub a: usize,
    pub b: usize,
    pub added: usize,
    pub choice: Choice,
    pub factor: Q,
}

/// A complete play of the game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftRightDiagram {
    pub setup: DiagramSetup,
    /// Moves for rows `2, 3, …`.
    pub moves: Vec<RowMove>,
    /// Shaded columns per row (`shaded[0]` is `J`), as booleans over `1..=width`.
    pub shaded: Vec<Vec<bool>>,
}

/// Builds `M`, `J`, `I` for a composition of `n − 1` into `n − 1` parts.
pub fn setup(comp: &Composition) -> Result<DiagramSetup> {
    let width = comp.len();
    if width == 0 {
        return Err(Error::CompositionLength {
            len: 0,
            expected: 1,
        });
    }
    if comp.sum() != width {
        return Err(Error::CompositionSum {
            sum: comp.sum(),
            expected: width,
        });
    }
    let m = comp.multiset();
    let j: Vec<usize> = comp
        .parts()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c >= 1)
        .map(|(k, _)| k + 1)
        .collect();
    let i: Vec<usize> = comp
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(k, &c)| std::iter::repeat_n(k + 1, c.saturating_sub(1)))
        .collect();
    Ok(DiagramSetup { width, m, j, i })
}

/// Maximal shaded run `[a, b]` containing column `c`.
fn string_around(shade: &[bool], c: usize) -> (usize, usize) {
    let (mut a, mut b) = (c, c);
    while a > 1 && shade[a - 2] {
        a -= 1;
    }
    while b < shade.len() && shade[b] {
        b += 1;
    }
    (a, b)
}

/// Every surviving play, in depth-first order with the left branch first.
pub fn enumerate_diagrams(setup: &DiagramSetup) -> Vec<LeftRightDiagram> {
    let mut first = vec![false; setup.width];
    for &j in &setup.j {
        first[j - 1] = true;
    }
    let mut out = Vec::new();
    let mut moves = Vec::new();
    let mut shaded = vec![first];
    explore(setup, &mut moves, &mut shaded, &mut out);
    out
}

fn explore(
    setup: &DiagramSetup,
    moves: &mut Vec<RowMove>,
    shaded: &mut Vec<Vec<bool>>,
    out: &mut Vec<LeftRightDiagram>,
) {
    let row = moves.len();
    if row == setup.i.len() {
        out.push(LeftRightDiagram {
            setup: setup.clone(),
            moves: moves.clone(),
            shaded: shaded.clone(),
        });
        return;
    }
    let c = setup.i[row];
    let prev = shaded.last().expect("row 1 exists").clone();
    debug_assert!(prev[c - 1], "marked box must be shaded");
    let (a, b) = string_around(&prev, c);
    let denom = (b - a + 2) as i64;
    let mut options = Vec::new();
    if a > 1 {
        options.push((
            a - 1,
            Q::new(((b - c + 1) as i64).into(), denom.into()),
            true,
        ));
    }
    if b < setup.width {
        options.push((
            b + 1,
            Q::new(((c - a + 1) as i64).into(), denom.into()),
            false,
        ));
    }
    let forced = options.len() == 1;
    for (added, factor, left) in options {
        let choice = match (left, forced) {
            (true, false) => Choice::Left,
            (false, false) => Choice::Right,
            (true, true) => Choice::ForcedLeft,
            (false, true) => Choice::ForcedRight,
        };
        let mut next = prev.clone();
        next[added - 1] = true;
        moves.push(RowMove {
            marked: c,
            a,
            b,
            added,
            choice,
            factor,
        });
        shaded.push(next);
        explore(setup, moves, shaded, out);
        shaded.pop();
        moves.pop();
    }
}

/// Product of the row factors.
pub fn weight(diagram: &LeftRightDiagram) -> Q {
    diagram
        .moves
        .iter()
        .fold(Q::one(), |acc, m| acc * &m.factor)
}

/// `(n − 1)! · Σ_P wt(P)`, together with the individual summands `(n − 1)! · wt(P)`.
pub fn diagram_summands(comp: &Composition) -> Result<(Q, Vec<Q>)> {
    let s = setup(comp)?;
    let scale = Q::from_integer(factorial(s.width));
    let parts: Vec<Q> = enumerate_diagrams(&s)
        .iter()
        .map(|d| weight(d) * &scale)
        .collect();
    let total = parts.iter().fold(Q::zero(), |acc, p| acc + p);
    Ok((total, parts))
}

/// The mixed Eulerian number `A_c` by the diagram formula.
pub fn mixed_eulerian_diagrams(comp: &Composition) -> Result<Q> {
    let (total, _) = diagram_summands(comp)?;
    if !total.is_integer() {
        return Err(Error::Internal(format!(
            "diagram sum {} is not an integer",
            format_q(&total)
        )));
    }
    Ok(total)
}

/// Output format for [`render_diagram`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" | "text" | "plain" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(Error::UnknownFormat(other.into())),
        }
    }
}

/// Renders a diagram by format name (`ascii` or `svg`).
pub fn render_diagram(diagram: &LeftRightDiagram, format: &str) -> Result<String> {
    let f: RenderFormat = format.parse()?;
    Ok(match f {
        RenderFormat::Ascii => render_ascii(diagram),
        RenderFormat::Svg => render_svg(diagram),
    })
}

fn row_label(diagram: &LeftRightDiagram, row: usize) -> String {
    match diagram.setup.marked(row) {
        Some(c) => c.to_string(),
        None => "J".into(),
    }
}

/// Grid with `#` for shaded, `x` for the marked box and `.` for empty cells.
pub fn render_ascii(diagram: &LeftRightDiagram) -> String {
    let w = diagram.setup.width;
    let cell = w.to_string().len().max(1);
    let mut s = String::new();
    let _ = write!(s, "{:>4} ", "");
    for c in 1..=w {
        let _ = write!(s, " {:>cell$}", c);
    }
    s.push('\n');
    for (r, shade) in diagram.shaded.iter().enumerate() {
        let row = r + 1;
        let marked = diagram.setup.marked(row);
        let _ = write!(s, "{:>4} ", row_label(diagram, row));
        for (k, &on) in shade.iter().enumerate() {
            let ch = if marked == Some(k + 1) {
                'x'
            } else if on {
                '#'
            } else {
                '.'
            };
            let _ = write!(s, " {:>cell$}", ch);
        }
        if r >= 1 {
            let _ = write!(s, "   {}", format_q(&diagram.moves[r - 1].factor));
        }
        s.push('\n');
    }
    let factors: Vec<String> = diagram.moves.iter().map(|m| format_q(&m.factor)).collect();
    let prod = if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    };
    let _ = writeln!(s, "wt = {} = {}", prod, format_q(&weight(diagram)));
    s
}

/// Standalone SVG drawing of the grid.
pub fn render_svg(diagram: &LeftRightDiagram) -> String {
    const CELL: usize = 24;
    const LEFT: usize = 40;
    const TOP: usize = 24;
    let w = diagram.setup.width;
    let rows = diagram.shaded.len();
    let width = LEFT + w * CELL + 80;
    let height = TOP + rows * CELL + 8;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"<g font-family="monospace" font-size="12" text-anchor="middle">"#
    );
    for c in 1..=w {
        let x = LEFT + (c - 1) * CELL + CELL / 2;
        let _ = writeln!(s, r#"<text x="{x}" y="{}">{c}</text>"#, TOP - 8);
    }
    for (r, shade) in diagram.shaded.iter().enumerate() {
        let row = r + 1;
        let y = TOP + r * CELL;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">{}</text>"#,
            LEFT / 2,
            y + CELL / 2 + 4,
            row_label(diagram, row)
        );
        for (k, &on) in shade.iter().enumerate() {
            let x = LEFT + k * CELL;
            let fill = if on { "#999999" } else { "#ffffff" };
            let _ = writeln!(
                s,
                r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#000000"/>"##
            );
            if diagram.setup.marked(row) == Some(k + 1) {
                let _ = writeln!(
                    s,
                    r##"<path d="M{} {} L{} {} M{} {} L{} {}" stroke="#000000" stroke-width="2"/>"##,
                    x + 4,
                    y + 4,
                    x + CELL - 4,
                    y + CELL - 4,
                    x + CELL - 4,
                    y + 4,
                    x + 4,
                    y + CELL - 4
                );
            }
        }
        if r >= 1 {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}">{}</text>"#,
                LEFT + w * CELL + 40,
                y + CELL / 2 + 4,
                format_q(&diagram.moves[r - 1].factor)
            );
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}
