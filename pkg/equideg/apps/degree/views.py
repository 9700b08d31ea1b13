from rest_framework import viewsets
from rest_framework.response import Response

from equideg.serializers import ReportSerializer

from .certificates import EXISTENCE_HYPOTHESES, existence_report
from .serializers import ExistenceInputSerializer


class ExistenceViewSet(viewsets.ViewSet):
    """
    Existence certificates for non-radial solutions
    """

    def create(self, request):
        job = ExistenceInputSerializer(data=request.data)
        job.is_valid(raise_exception=True)
        spectrum = job.save()
        report = existence_report(
            spectrum,
            guard=job.validated_data.get('guard'),
            assumptions=EXISTENCE_HYPOTHESES if job.validated_data['assert_hypotheses'] else (),
        )
        return Response(ReportSerializer(report).data)
