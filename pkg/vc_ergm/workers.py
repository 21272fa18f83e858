#
# Copyright 2026 The vc-ergm developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

from __future__ import absolute_import
from __future__ import print_function

#importing printlog() wrapper
from .debug import printlog

import threading

from six.moves import range


class JobQueue(object):
    def __init__(self, jobs=None):
        self._lock = threading.Lock()
        self._queue = []
        for index, job in enumerate(jobs or []):
            self.enqueue((index, job))

    def enqueue(self, job):
        self._lock.acquire()
        self._queue.insert(0, job)
        self._lock.release()

    def dequeue(self):
        self._lock.acquire()
        try:
            j = self._queue.pop()
        except IndexError:
            j = None
        self._lock.release()

        return j

    def __len__(self):
        self._lock.acquire()
        l = len(self._queue)
        self._lock.release()

        return l


class JobFailure(object):
    '''Placeholder result for a job that raised.'''

    def __init__(self, job, error):
        self.job = job
        self.error = error

    def __repr__(self):
        return "JobFailure(%r, %r)" % (self.job, self.error)


class WorkerPool(object):
    def __init__(self, func, threads=1, name="worker"):
        self.func = func
        self.threads = max(1, int(threads))
        self.name = name

    def _call(self, job):
        try:
            return self.func(job)
        except Exception as e:
            printlog("Workers", "   : %s job %r failed: %s" % (self.name, job, e))
            return JobFailure(job, e)

    def worker(self, queue, results):
        while True:
            item = queue.dequeue()
            if item is None:
                break
            index, job = item
            results[index] = self._call(job)

    def run(self, jobs):
        '''
        Run func over jobs and return the results in job order.

        Exceptions raised by a job are returned as JobFailure objects so one
        bad replicate does not take the batch down.
        '''
        jobs = list(jobs)
        results = [None] * len(jobs)

        if self.threads == 1 or len(jobs) < 2:
            for index, job in enumerate(jobs):
                results[index] = self._call(job)
            return results

        queue = JobQueue(jobs)
        pool = []
        for i in range(min(self.threads, len(jobs))):
            t = threading.Thread(target=self.worker, args=(queue, results),
                                 name="%s-%i" % (self.name, i))
            t.daemon = True
            t.start()
            pool.append(t)

        for t in pool:
            t.join()

        printlog("Workers", "   : %s finished %i jobs on %i threads" %
                 (self.name, len(jobs), len(pool)))
        return results


def run_jobs(func, jobs, threads=1, name="worker"):
    return WorkerPool(func, threads, name).run(jobs)
