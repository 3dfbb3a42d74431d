# Config, logging setup and the TSV record reader
