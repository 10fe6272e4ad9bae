#!/usr/bin/env python3
"""
Run journal

Records CLI run events (start, written artifacts, verdicts, failures, end)
to a JSONL file in the output directory. Each entry is timestamped and
flushed as soon as it is written, so a crashed run still leaves a readable
journal.
"""
from datetime import datetime
import json
import logging
import os

logger = logging.getLogger(__name__)

JOURNAL_NAME = "journal.jsonl"


class RunJournal:
    """Appends run events to <out_dir>/journal.jsonl

    Usable as a context manager; entries written while the journal is closed
    are dropped.
    """

    def __init__(self, out_dir="out"):
        """Initialize run journal

        Args:
            out_dir: Output directory of the run (created when missing)
        """
        self.out_dir = out_dir
        self.path = os.path.join(out_dir, JOURNAL_NAME)
        self.enabled = False
        self.log_file = None

        if not os.path.exists(out_dir):
            os.makedirs(out_dir)

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.stop()
        return False

    # === Public API ===

    def start(self):
        """Open the journal in append mode"""
        if self.enabled:
            return
        self.log_file = open(self.path, 'a')
        self.enabled = True
        logger.debug("run journal opened: %s", self.path)

    def stop(self):
        """Close the journal file"""
        if self.log_file:
            self.log_file.close()
            self.log_file = None
        self.enabled = False

    def run_start(self, command, config):
        """Log the command and its fully resolved configuration

        Args:
            command: Subcommand name
            config: Resolved configuration as a plain dictionary
        """
        self._log('run_start', {'command': command, 'config': config})

    def artifact(self, path, kind):
        """Log a written output file

        Args:
            path: File path
            kind: Artifact kind (csv, svg, json)
        """
        self._log('artifact', {'path': str(path), 'kind': kind})

    def verdict(self, record):
        self._log('verdict', record)

    def failure(self, error, exit_code):
        """Log an error that ends the run

        Args:
            error: Exception instance
            exit_code: Process exit code the CLI will return
        """
        self._log('failure', {
            'error': type(error).__name__,
            'message': str(error),
            'exit_code': exit_code,
        })

    def run_end(self, exit_code):
        self._log('run_end', {'exit_code': exit_code})

    # === Internal Methods ===

    def _log(self, event, payload):
        if not self.enabled:
            return
        self._write_entry({'event': event, 'data': payload})

    def _write_entry(self, entry: dict):
        """Write journal entry to file

        Adds timestamp and flushes immediately.

        Args:
            entry: Dictionary to log
        """
        entry['timestamp'] = datetime.now().isoformat()
        self.log_file.write(json.dumps(entry, default=str) + '\n')
        self.log_file.flush()
