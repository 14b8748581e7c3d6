//! Writes a seeded road-like grid graph in DIMACS format to stdout.
//!
//! usage: road_grid <width> <height> [arterial-spacing] [seed]

use std::io::{self, BufWriter, Write};

use eh_core::dimacs::write_dimacs;
use eh_core::synthetic::road_grid;

fn main() -> io::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    if args.len() < 2 {
        eprintln!("usage: road_grid <width> <height> [arterial-spacing] [seed]");
        std::process::exit(2);
    }
    let spacing = args.get(2).copied().unwrap_or(8);
    let seed = args.get(3).copied().unwrap_or(1) as u64;
    let g = road_grid(args[0], args[1], spacing, seed);
    let mut out = BufWriter::new(io::stdout().lock());
    write_dimacs(&g, &mut out)?;
    out.flush()
}
