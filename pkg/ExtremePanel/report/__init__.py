from .report import Report, ReportKind, read_fit_report, write_fit_report

__all__ = ['Report', 'ReportKind', 'read_fit_report', 'write_fit_report']
