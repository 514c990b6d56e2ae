import os
import sys

from aws_lambda_powertools import Logger

# Structured JSON log lines go to stderr; stdout belongs to command output.
logger = Logger(
    service="hatlab",
    level=os.getenv("HATLAB_LOG_LEVEL", "WARNING"),
    stream=sys.stderr,
)
