from django.urls import path

from graphical import views

urlpatterns = [
    path("api/screenings/", views.screening_list, name="screening_list"),
]
