from .report import build_record, emit_report, summary_lines
