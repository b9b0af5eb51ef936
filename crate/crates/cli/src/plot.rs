//! Self-contained matplotlib scripts with the data written inline.

use std::fmt::Write as _;

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Figure<'a> {
    pub title: &'a str,
    pub xlabel: &'a str,
    pub ylabel: &'a str,
    pub log_y: bool,
    /// Output image written when the script runs.
    pub image: &'a str,
}

/// Python source that draws `series`; non-finite points are left out.
pub fn script(figure: &Figure<'_>, series: &[Series]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "#!/usr/bin/env python3");
    let _ = writeln!(s, "# Generated by nakagami-aber; data is inlined below.");
    let _ = writeln!(s, "import matplotlib");
    let _ = writeln!(s, "matplotlib.use(\"Agg\")");
    let _ = writeln!(s, "import matplotlib.pyplot as plt\n");
    let _ = writeln!(s, "SERIES = [");
    for one in series {
        let _ = writeln!(s, "    ({:?}, [", one.label);
        for &(x, y) in one.points.iter().filter(|(x, y)| x.is_finite() && y.is_finite()) {
            let _ = writeln!(s, "        ({x:?}, {y:?}),");
        }
        let _ = writeln!(s, "    ]),");
    }
    let _ = writeln!(s, "]\n");
    let _ = writeln!(s, "fig, ax = plt.subplots(figsize=(7, 5))");
    let _ = writeln!(s, "for label, points in SERIES:");
    let _ = writeln!(s, "    if points:");
    let _ = writeln!(s, "        xs, ys = zip(*points)");
    let _ = writeln!(s, "        ax.plot(xs, ys, marker=\"o\", markersize=3, label=label)");
    if figure.log_y {
        let _ = writeln!(s, "ax.set_yscale(\"log\")");
    }
    let _ = writeln!(s, "ax.set_title({:?})", figure.title);
    let _ = writeln!(s, "ax.set_xlabel({:?})", figure.xlabel);
    let _ = writeln!(s, "ax.set_ylabel({:?})", figure.ylabel);
    let _ = writeln!(s, "ax.grid(True, which=\"both\", alpha=0.3)");
    let _ = writeln!(s, "ax.legend()");
    let _ = writeln!(s, "fig.tight_layout()");
    let _ = writeln!(s, "fig.savefig({:?}, dpi=150)", figure.image);
    s
}
