//! Field output: legacy VTK (ASCII structured points, cell data) and CSV
//! plane slices.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use fvweno::{Axis, ConservedField, EquationSystem, Grid3};

use crate::error::{HarnessError, Result};
use crate::system::AnySystem;

/// Named per-cell scalars in `i`-fastest order.
pub type CellScalars = Vec<(String, Vec<f64>)>;

/// Every component of `field`, plus pressure for Euler fields.
pub fn field_scalars(field: &ConservedField, system: &AnySystem) -> CellScalars {
    let names = system.component_names();
    let mut out: CellScalars = names.into_iter().map(|n| (n, Vec::with_capacity(field.grid().interior_cells()))).collect();
    let mut pressure = Vec::new();
    field.for_each_interior(|_, _, _, u| {
        for (c, (_, v)) in out.iter_mut().enumerate() {
            v.push(u[c]);
        }
        if let AnySystem::Euler(e) = system {
            pressure.push(e.pressure(u));
        }
    });
    if !pressure.is_empty() {
        out.push(("pressure".into(), pressure));
    }
    out
}

pub fn write_vtk(path: &Path, grid: &Grid3, scalars: &CellScalars) -> Result<()> {
    let io = |e| HarnessError::io(path, e);
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    let n = grid.n();
    let (lo, dx) = (grid.lo(), grid.dx());
    writeln!(w, "# vtk DataFile Version 3.0").map_err(io)?;
    writeln!(w, "fvweno cell averages").map_err(io)?;
    writeln!(w, "ASCII").map_err(io)?;
    writeln!(w, "DATASET STRUCTURED_POINTS").map_err(io)?;
    writeln!(w, "DIMENSIONS {} {} {}", n[0] + 1, n[1] + 1, n[2] + 1).map_err(io)?;
    writeln!(w, "ORIGIN {:e} {:e} {:e}", lo[0], lo[1], lo[2]).map_err(io)?;
    writeln!(w, "SPACING {:e} {:e} {:e}", dx[0], dx[1], dx[2]).map_err(io)?;
    writeln!(w, "CELL_DATA {}", grid.interior_cells()).map_err(io)?;
    for (name, values) in scalars {
        if values.len() != grid.interior_cells() {
            return Err(fvweno::Error::ShapeMismatch(format!("{name} has {} values", values.len())).into());
        }
        writeln!(w, "SCALARS {name} double 1").map_err(io)?;
        writeln!(w, "LOOKUP_TABLE default").map_err(io)?;
        for v in values {
            writeln!(w, "{v:.16e}").map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

/// Values on the plane of cells with index `index` along `normal`, one row
/// per cell: the two in-plane center coordinates and the value, each with 17
/// significant digits.
pub fn write_slice_csv<F>(path: &Path, field: &ConservedField, normal: Axis, index: usize, name: &str, value: F) -> Result<()>
where
    F: Fn(&[f64]) -> f64,
{
    let grid = field.grid();
    let n = grid.n();
    if index >= n[normal.index()] {
        return Err(HarnessError::Config(format!(
            "slice index {index} outside 0..{} along {}",
            n[normal.index()],
            normal.name()
        )));
    }
    let (a, b) = normal.tangential();
    let wrap = |e: csv::Error| HarnessError::Csv { path: path.to_path_buf(), source: e };
    let mut w = csv::Writer::from_path(path).map_err(wrap)?;
    w.write_record([a.name(), b.name(), name]).map_err(wrap)?;
    for ib in 0..n[b.index()] as isize {
        for ia in 0..n[a.index()] as isize {
            let mut idx = [0isize; 3];
            idx[normal.index()] = index as isize;
            idx[a.index()] = ia;
            idx[b.index()] = ib;
            let u = field.cell(idx[0], idx[1], idx[2]);
            let (xa, xb) = (grid.center_1d(a.index(), ia), grid.center_1d(b.index(), ib));
            w.write_record([format!("{xa:.16e}"), format!("{xb:.16e}"), format!("{:.16e}", value(u))]).map_err(wrap)?;
        }
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_vtk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("one.vtk");
        let g = Grid3::new([0.0; 3], [1.0; 3], [1; 3], 0).unwrap();
        write_vtk(&path, &g, &vec![("u".into(), vec![3.0])]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("DATASET STRUCTURED_POINTS"));
        assert!(text.contains("DIMENSIONS 2 2 2"));
        assert!(text.contains("CELL_DATA 1"));
        assert_eq!(text.lines().last().unwrap().parse::<f64>().unwrap(), 3.0);
    }

    #[test]
    fn slice_round_trips_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("slice.csv");
        let g = Grid3::new([0.0; 3], [1.0; 3], [3, 2, 4], 1).unwrap();
        let f = fvweno::fill_from_function(g, 1, fvweno::CellAveraging::PointSample, |p, o| {
            o[0] = (p[0] * 7.3).sin() / 3.0 + p[2].exp()
        })
        .unwrap();
        write_slice_csv(&path, &f, Axis::Y, 1, "u", |u| u[0]).unwrap();
        let mut r = csv::Reader::from_path(&path).unwrap();
        assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), vec!["x", "z", "u"]);
        let mut count = 0;
        for (row, rec) in r.records().enumerate() {
            let rec = rec.unwrap();
            let (i, k) = ((row % 3) as isize, (row / 3) as isize);
            assert_eq!(rec[2].parse::<f64>().unwrap(), f.get(0, i, 1, k));
            count += 1;
        }
        assert_eq!(count, 12);
        assert!(write_slice_csv(&path, &f, Axis::Y, 2, "u", |u| u[0]).is_err());
    }
}
