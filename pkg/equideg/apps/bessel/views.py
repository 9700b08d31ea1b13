from rest_framework import viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from .serializers import BelowQuerySerializer, BesselZeroSerializer, ZeroQuerySerializer
from .zeros import below_report, zero_record


class BesselViewSet(viewsets.ViewSet):
    """
    Zeros of J_m and Dirichlet eigenvalues of the unit disc
    """

    @action(detail=False, methods=['post'])
    def zeros(self, request):
        """Return j_{m,n} and s_{m,n}"""
        query = ZeroQuerySerializer(data=request.data)
        query.is_valid(raise_exception=True)
        record = zero_record(query.validated_data['m'], query.validated_data['n'])
        return Response(BesselZeroSerializer(record).data)

    @action(detail=False, methods=['post'])
    def below(self, request):
        """List eigenvalues below a bound, for one mode or all modes"""
        query = BelowQuerySerializer(data=request.data)
        query.is_valid(raise_exception=True)
        report = below_report(query.validated_data['bound'], query.validated_data.get('m'))
        report['eigenvalues'] = BesselZeroSerializer(report['eigenvalues'], many=True).data
        return Response(report)
