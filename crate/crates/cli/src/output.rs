use std::io::{self, BufWriter, Stdout, Write};

use clap::ValueEnum;
use serde::Serialize;

use odsq_core::{PiBreakdown, Report};

use crate::bench::BenchRow;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Out {
    format: Format,
    w: BufWriter<Stdout>,
}

impl Out {
    pub fn stdout(format: Format) -> Self {
        Out {
            format,
            w: BufWriter::new(io::stdout()),
        }
    }

    pub fn line(&mut self, s: &str) -> io::Result<()> {
        writeln!(self.w, "{s}")
    }

    pub fn json<T: Serialize + ?Sized>(&mut self, v: &T) -> anyhow::Result<()> {
        serde_json::to_writer(&mut self.w, v)?;
        writeln!(self.w)?;
        Ok(())
    }

    pub fn csv_rows<T: Serialize>(&mut self, rows: &[T]) -> anyhow::Result<()> {
        let mut csv = csv::Writer::from_writer(&mut self.w);
        for r in rows {
            csv.serialize(r)?;
        }
        csv.flush()?;
        Ok(())
    }

    pub fn sequence(&mut self, column: &str, values: &[u64]) -> anyhow::Result<()> {
        match self.format {
            Format::Text => {
                let s: Vec<String> = values.iter().map(u64::to_string).collect();
                self.line(&s.join(" "))?;
            }
            Format::Json => self.json(values)?,
            Format::Csv => {
                let mut csv = csv::Writer::from_writer(&mut self.w);
                csv.write_record(["index", column])?;
                for (i, v) in values.iter().enumerate() {
                    csv.write_record([(i + 1).to_string(), v.to_string()])?;
                }
                csv.flush()?;
            }
        }
        Ok(())
    }

    pub fn pi(&mut self, b: &PiBreakdown) -> anyhow::Result<()> {
        let classes = b
            .class_counts
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let n = b.n.map(|n| n.to_string());
        match self.format {
            Format::Json => self.json(b)?,
            Format::Text => {
                writeln!(self.w, "x        {}", b.x)?;
                writeln!(self.w, "strategy {}", b.strategy)?;
                writeln!(self.w, "n        {}", n.as_deref().unwrap_or("-"))?;
                writeln!(self.w, "M_n      {}", b.m_n)?;
                for (k, v) in &b.class_counts {
                    writeln!(self.w, "  {k:<8} {v}")?;
                }
                writeln!(self.w, "W_n      {}", b.w_n)?;
                writeln!(self.w, "m        {}", b.m_corr)?;
                writeln!(self.w, "pi       {}", b.pi)?;
            }
            Format::Csv => {
                let mut csv = csv::Writer::from_writer(&mut self.w);
                csv.write_record(["x", "n", "strategy", "m_n", "w_n", "m", "pi", "class_counts"])?;
                csv.write_record([
                    b.x.to_string(),
                    n.unwrap_or_default(),
                    b.strategy.to_string(),
                    b.m_n.to_string(),
                    b.w_n.to_string(),
                    b.m_corr.to_string(),
                    b.pi.to_string(),
                    classes,
                ])?;
                csv.flush()?;
            }
        }
        Ok(())
    }

    pub fn report(&mut self, r: &Report) -> anyhow::Result<()> {
        match self.format {
            Format::Json => self.json(r)?,
            Format::Csv => self.csv_rows(&r.rows)?,
            Format::Text => {
                writeln!(
                    self.w,
                    "{:<10} {:<10} {:>10} {:>12} {:>12} {:>8} {:>10}",
                    "quantity", "variant", "location", "paper", "oracle", "delta", "mismatch"
                )?;
                for row in &r.rows {
                    writeln!(
                        self.w,
                        "{:<10} {:<10} {:>10} {:>12} {:>12} {:>8} {:>10}",
                        row.quantity,
                        row.variant.to_string(),
                        row.location,
                        row.paper,
                        row.oracle,
                        row.delta,
                        row.mismatches
                    )?;
                }
            }
        }
        Ok(())
    }

    pub fn bench(&mut self, rows: &[BenchRow]) -> anyhow::Result<()> {
        match self.format {
            Format::Json => self.json(rows)?,
            Format::Csv => self.csv_rows(rows)?,
            Format::Text => {
                writeln!(self.w, "{:<12} {:>14} {:>8} {:>16}", "name", "x_max", "repeats", "median_ns")?;
                for r in rows {
                    writeln!(
                        self.w,
                        "{:<12} {:>14} {:>8} {:>16}",
                        r.name, r.x_max, r.repeats, r.median_ns
                    )?;
                }
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.w.flush()
    }
}
