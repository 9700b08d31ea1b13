from rest_framework import viewsets
from rest_framework.decorators import action
from rest_framework.response import Response

from .ring import product_report
from .serializers import ProductQuerySerializer, ProductReportSerializer


class BurnsideViewSet(viewsets.ViewSet):
    """
    Products of basic degrees in the tracked Burnside ring
    """

    @action(detail=False, methods=['post'])
    def product(self, request):
        """Expand the product over the given modes and cross-check one coefficient"""
        query = ProductQuerySerializer(data=request.data)
        query.is_valid(raise_exception=True)
        report = product_report(query.validated_data['modes'], query.validated_data.get('coeff'))
        return Response(ProductReportSerializer(report).data)
