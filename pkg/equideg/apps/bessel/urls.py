from django.urls import path, include
from rest_framework.routers import SimpleRouter

from .views import BesselViewSet

router = SimpleRouter()
router.register(r'bessel', BesselViewSet, basename='bessel')

urlpatterns = [
    path('', include(router.urls)),
]
