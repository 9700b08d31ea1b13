from rest_framework import viewsets
from rest_framework.response import Response

from equideg.apps.degree.certificates import BIFURCATION_HYPOTHESES
from equideg.serializers import ReportSerializer

from .invariants import global_report
from .serializers import BifurcationInputSerializer


class BifurcationViewSet(viewsets.ViewSet):
    """
    Critical points, local and global invariants and branch certificates of a matrix family
    """

    def create(self, request):
        job = BifurcationInputSerializer(data=request.data)
        job.is_valid(raise_exception=True)
        family = job.save()
        report = global_report(
            family,
            assumptions=BIFURCATION_HYPOTHESES if job.validated_data['assert_hypotheses'] else (),
            **job.analysis_options(),
        )
        return Response(ReportSerializer(report).data)
