//! Golden-table reproduction. The expected values live in plain-text files
//! under golden/, keyed by dimension vector or partition tuple, and are
//! compared byte-for-byte against canonical renderings of recomputed
//! entries.

use crate::hua::{HuaError, KacTable, RefinedKacTable};
use crate::partitions::{MultiplicityMatrix, PartitionTuple};
use crate::quiver::{DimVector, Quiver};

use super::CheckReport;

const KAC_2LOOP: &str = include_str!("../../golden/kac_2loop.txt");
const REFINED_2LOOP: &str = include_str!("../../golden/refined_2loop.txt");
const KAC_TWO_VERTEX: &str = include_str!("../../golden/kac_two_vertex.txt");
const REFINED_TWO_VERTEX: &str = include_str!("../../golden/refined_two_vertex.txt");

/// Pipe-separated rows, '#' comments and blank lines skipped.
fn rows(data: &str) -> Vec<Vec<String>> {
    data.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split('|').map(|cell| cell.trim().to_string()).collect())
        .collect()
}

/// Recomputes every golden table and reports per-entry comparisons.
pub fn check_tables() -> Result<CheckReport, HuaError> {
    let mut report = CheckReport::new("tables");

    let two_loop = Quiver::g_loop(2);
    let kac = KacTable::compute(&two_loop, 4)?;
    for row in rows(KAC_2LOOP) {
        let alpha: DimVector = row[0].parse().expect("golden key");
        let actual = kac.get(&alpha)?;
        report.case(format!("2-loop kac {alpha}"), &row[1], actual);
    }

    let refined = RefinedKacTable::compute(&two_loop, 4, None)?;
    for row in rows(REFINED_2LOOP) {
        let lambda: PartitionTuple = row[0].parse().expect("golden key");
        let mv = MultiplicityMatrix::from_tuple(&lambda);
        report.case(format!("2-loop refined {lambda} vector"), &row[1], mv);
        let actual = refined.get(&lambda)?;
        report.case(format!("2-loop refined {lambda}"), &row[2], actual);
    }

    let with_loops = Quiver::parse("[[1,1],[0,1]]").expect("constant matrix");
    let no_loops = Quiver::parse("[[0,1],[0,0]]").expect("constant matrix");
    let kac_a = KacTable::compute(&with_loops, 4)?;
    let kac_b = KacTable::compute(&no_loops, 4)?;
    for row in rows(KAC_TWO_VERTEX) {
        let alpha: DimVector = row[0].parse().expect("golden key");
        report.case(
            format!("loops+arrow kac {alpha}"),
            &row[1],
            kac_a.get(&alpha)?,
        );
        report.case(format!("arrow kac {alpha}"), &row[2], kac_b.get(&alpha)?);
    }

    let refined_a = RefinedKacTable::compute(&with_loops, 4, Some(2))?;
    let refined_b = RefinedKacTable::compute(&no_loops, 4, Some(2))?;
    for row in rows(REFINED_TWO_VERTEX) {
        let lambda: PartitionTuple = row[0].parse().expect("golden key");
        let mv = MultiplicityMatrix::from_tuple(&lambda);
        report.case(format!("two-vertex refined {lambda} vector"), &row[1], mv);
        report.case(
            format!("loops+arrow refined {lambda}"),
            &row[2],
            refined_a.get(&lambda)?,
        );
        report.case(
            format!("arrow refined {lambda}"),
            &row[3],
            refined_b.get(&lambda)?,
        );
    }

    Ok(report)
}
