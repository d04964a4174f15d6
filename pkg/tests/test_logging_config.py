#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""Tests for the logging_config module."""

import json
import logging
import os
import tempfile
import unittest
from io import StringIO
from unittest.mock import patch

# Import the module to test
try:
    from latspec import logging_config
    from latspec.logging_config import (
        PROGRESS_LOGGER, TRACE, configure_logging, log_progress, log_with_context
    )
except ImportError:
    # When running tests directly
    import sys
    import os.path
    sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    import logging_config
    from logging_config import (
        PROGRESS_LOGGER, TRACE, configure_logging, log_progress, log_with_context
    )


class TestLoggingConfig(unittest.TestCase):
    """Logger setup and structured records."""

    def tearDown(self):
        for name in ('latspec', PROGRESS_LOGGER):
            logger = logging.getLogger(name)
            for handler in list(logger.handlers):
                handler.close()
                logger.removeHandler(handler)
        logging_config._logger = None

    def test_levels(self):
        self.assertEqual(configure_logging(verbose=True).level, logging.DEBUG)
        self.assertEqual(configure_logging(log_level="info").level, logging.INFO)
        self.assertEqual(configure_logging(log_level="chatty").level, logging.WARNING)

    def test_reconfiguring_replaces_handlers(self):
        configure_logging()
        logger = configure_logging()
        self.assertEqual(len(logger.handlers), 1)
        self.assertFalse(logger.propagate)

    def test_records_go_to_stderr(self):
        with patch('sys.stderr', new_callable=StringIO) as err, \
                patch('sys.stdout', new_callable=StringIO) as out:
            configure_logging(log_level="INFO", log_format="%(levelname)s %(message)s")
            logging.getLogger('latspec.spectra').info("scanning")
        self.assertEqual(err.getvalue(), "INFO scanning\n")
        self.assertEqual(out.getvalue(), "")

    def test_structured_context(self):
        with patch('sys.stderr', new_callable=StringIO) as err:
            configure_logging(structured=True, log_level="INFO")
            log_with_context("info", "progress", done=4096, total=131071)
        record = json.loads(err.getvalue().splitlines()[-1])
        self.assertEqual(record["level"], "INFO")
        self.assertEqual(record["message"], "progress [done=4096 total=131071]")
        self.assertEqual((record["done"], record["total"]), (4096, 131071))

    def test_progress_is_shown_at_the_default_level(self):
        with patch('sys.stderr', new_callable=StringIO) as err:
            configure_logging(log_format="%(name)s %(message)s")
            logging.getLogger('latspec.spectra').info("hidden")
            log_progress("progress", done=4096, total=8191)
        self.assertEqual(err.getvalue(), "latspec.progress progress [done=4096 total=8191]\n")

    def test_progress_can_be_switched_off(self):
        with patch('sys.stderr', new_callable=StringIO) as err:
            configure_logging(progress=False)
            log_progress("progress", done=1, total=1)
        self.assertEqual(err.getvalue(), "")

    def test_trace_is_below_verbose(self):
        with patch('sys.stderr', new_callable=StringIO) as err:
            configure_logging(verbose=True, log_format="%(levelname)s %(message)s")
            logging.getLogger('latspec.product').log(TRACE, "closure round 1")
            logging.getLogger('latspec.product').debug("closure done")
        self.assertEqual(err.getvalue(), "DEBUG closure done\n")
        self.assertEqual(configure_logging(log_level="trace").level, TRACE)

    def test_log_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "logs", "latspec.log")
            with patch('sys.stderr', new_callable=StringIO):
                configure_logging(log_file=path, log_level="WARNING")
                logging.getLogger('latspec.product').warning("large closure")
            self.tearDown()
            with open(path, encoding="utf-8") as f:
                self.assertIn("large closure", f.read())


if __name__ == '__main__':
    unittest.main()
