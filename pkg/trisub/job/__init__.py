from trisub.job.job import Job
from trisub.job.trace import Trace
from trisub.job.census import CensusJob
from trisub.job.recursion import ExploreJob, TheoremCheckJob
from trisub.job.oracle import OracleJob
