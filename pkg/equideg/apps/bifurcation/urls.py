from django.urls import path, include
from rest_framework.routers import SimpleRouter

from .views import BifurcationViewSet

router = SimpleRouter()
router.register(r'bifurcation', BifurcationViewSet, basename='bifurcation')

urlpatterns = [
    path('', include(router.urls)),
]
